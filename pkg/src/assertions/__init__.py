"""
벡터 상태 단언(Predicate) 언어 모듈
"""
