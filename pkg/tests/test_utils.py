"""
utils 테스트: 설정 파일, 로거, 시드
"""
import logging
import random

import numpy as np
import pytest

from src.utils.config import get_section, load_config, save_config
from src.utils.logger import setup_logger
from src.utils.seed import make_rng, set_seed


def test_config_save_and_load(tmp_path):
    path = tmp_path / 'nested' / 'config.yaml'
    save_config({'gfa': {'domain': 'mod:6', 'width': 2}}, str(path))
    config = load_config(str(path))
    assert get_section(config, 'gfa') == {'domain': 'mod:6', 'width': 2}
    assert get_section(config, 'output') == {}


def test_missing_config(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / 'none.yaml'))


def test_empty_config(tmp_path):
    path = tmp_path / 'empty.yaml'
    path.write_text('', encoding='utf-8')
    assert load_config(str(path)) == {}


def test_logger_console_only():
    logger = setup_logger('checker-test', log_dir=None, level='DEBUG')
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1


def test_logger_writes_file(tmp_path):
    logger = setup_logger('checker-file', log_dir=str(tmp_path), level=logging.INFO)
    logger.info("hello")
    for handler in logger.handlers:
        handler.flush()
    assert any(p.suffix == '.log' for p in tmp_path.iterdir())


def test_seed_is_reproducible():
    set_seed(7)
    first = (random.random(), np.random.rand())
    set_seed(7)
    assert (random.random(), np.random.rand()) == first
    assert make_rng(3).integers(0, 100) == make_rng(3).integers(0, 100)
