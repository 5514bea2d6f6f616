"""
증명 커널: 판단, 규칙 템플릿, 증명 파일, 검사기, 보고서, 비실현성 결론
"""
