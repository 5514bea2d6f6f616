"""
검사기 로그 관리 모듈
"""
import logging
import os
from datetime import datetime
from typing import Optional


def setup_logger(name, log_dir: Optional[str] = 'experiments/logs', level=logging.INFO):
    """
    로거 설정

    Args:
        name: 로거 이름
        log_dir: 로그 파일 저장 디렉토리 (None이면 콘솔 출력만 사용)
        level: 로그 레벨 (정수 또는 "DEBUG" 같은 이름)

    Returns:
        logger: 설정된 로거 객체
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    # 로거 생성
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # 기존 핸들러 제거
    logger.handlers = []

    # 포맷터
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # 파일 핸들러
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"{name}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # 콘솔 핸들러 (보고서 출력과 섞이지 않도록 stderr 사용)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger
