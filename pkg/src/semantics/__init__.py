"""
벡터 상태 의미론 모듈 (평가기, 항 열거, 반례 탐색)
"""
