"""
프레스버거 산술 엔진 (선형 식 IR, Cooper 한정자 제거, 모델 탐색)
"""
