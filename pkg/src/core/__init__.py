"""
핵심 구문 모듈 (S-식, 항, 문법, 합성 문제, 카운터 머신)
"""
