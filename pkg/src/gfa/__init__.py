"""
유한 정의역 문법 흐름 분석(GFA) 패키지
"""
