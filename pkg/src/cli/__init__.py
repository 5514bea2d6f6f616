"""
명령행 인터페이스 (check / decide / falsify / emit-smt / encode-cm)
"""
