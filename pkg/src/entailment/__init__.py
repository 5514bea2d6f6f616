"""
부수 조건(함의) 판정 모듈
"""
