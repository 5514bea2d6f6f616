"""
실행 설정(RunConfig) 모듈
우선순위: 명령행 플래그 > 환경 변수(.env 포함) > YAML 설정 > 기본값
"""
import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from src.utils.config import get_section, load_config
from src.entailment.solver import BACKENDS
from src.gfa.domain import parse_domain

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = 'configs/config_checker.yaml'
FORMATS = ('text', 'json')

ENV_SOLVER = 'UL_SOLVER'
ENV_SOLVER_TIMEOUT = 'UL_SOLVER_TIMEOUT'


@dataclass(frozen=True)
class RunConfig:
    """
    한 명령 실행에 필요한 설정

    Attributes:
        solver_backend: auto | process | z3 | none
        solver_path: 외부 solver 명령어
        timeout_secs: solver 시간 제한
        max_dnf: 쿠퍼 DNF 전개 상한
        width: 증명 검사 폭 (None이면 증명 파일/문제를 따르고, 없으면 무한)
        depth, fuel, samples, bound, seed: 반례 탐색 경계
        domain: GFA 정의역 ('mod:2', 'set:0,1,2')
        gfa_width: GFA 예제 수
        budget: GFA 예산
        format: text | json
        log_level: 로그 레벨 이름
    """
    solver_backend: str = 'auto'
    solver_path: Optional[str] = None
    timeout_secs: float = 10.0
    max_dnf: int = 64
    width: Optional[int] = None
    depth: int = 4
    fuel: int = 64
    samples: int = 50
    bound: int = 8
    seed: Optional[int] = 42
    domain: str = 'mod:2'
    gfa_width: int = 1
    budget: int = 100_000
    format: str = 'text'
    log_level: str = 'WARNING'

    def __post_init__(self):
        self.validate()

    def validate(self):
        """경계 양수, 정의역 파싱, 출력 형식 확인 (위반 시 ValueError)"""
        if self.solver_backend not in BACKENDS:
            raise ValueError(f"unknown solver backend: {self.solver_backend}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown output format: {self.format}")
        for name in ('timeout_secs', 'max_dnf', 'depth', 'fuel', 'samples', 'bound', 'gfa_width', 'budget'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.width is not None and self.width < 1:
            raise ValueError(f"width must be positive, got {self.width}")
        parse_domain(self.domain)

    @classmethod
    def from_sources(cls, args: Optional[Mapping[str, Any]] = None, config: Optional[Dict[str, Any]] = None,
                     env: Optional[Mapping[str, str]] = None) -> 'RunConfig':
        """
        플래그, 환경 변수, YAML 설정을 합쳐 RunConfig 생성

        Args:
            args: 명령행 값 (None인 항목은 무시)
            config: load_config 결과
            env: 환경 변수 (None이면 os.environ)

        Returns:
            RunConfig
        """
        args = dict(args or {})
        config = config or {}
        env = os.environ if env is None else env

        checker = get_section(config, 'checker')
        entailment = get_section(config, 'entailment')
        semantics = get_section(config, 'semantics')
        gfa = get_section(config, 'gfa')
        output = get_section(config, 'output')

        values: Dict[str, Any] = {
            'solver_backend': entailment.get('backend'),
            'solver_path': entailment.get('solver_path'),
            'timeout_secs': entailment.get('timeout_secs'),
            'max_dnf': entailment.get('max_dnf'),
            'width': checker.get('width'),
            'depth': semantics.get('depth'),
            'fuel': semantics.get('fuel'),
            'samples': semantics.get('samples'),
            'bound': semantics.get('bound'),
            'seed': semantics.get('seed'),
            'domain': gfa.get('domain'),
            'gfa_width': gfa.get('width'),
            'budget': gfa.get('budget'),
            'format': output.get('format'),
            'log_level': output.get('log_level'),
        }
        if env.get(ENV_SOLVER):
            values['solver_path'] = env[ENV_SOLVER]
        if env.get(ENV_SOLVER_TIMEOUT):
            try:
                values['timeout_secs'] = float(env[ENV_SOLVER_TIMEOUT])
            except ValueError:
                raise ValueError(f"{ENV_SOLVER_TIMEOUT} must be a number, got {env[ENV_SOLVER_TIMEOUT]!r}")

        known = {f.name for f in fields(cls)}
        for key, value in args.items():
            if key in known and value is not None:
                values[key] = value
        # width는 설정 파일에서 null이 의미 있는 값이다
        kwargs = {k: v for k, v in values.items() if v is not None or k == 'width'}
        return cls(**kwargs)


def load_run_config(config_path: Optional[str] = None, args: Optional[Mapping[str, Any]] = None,
                    env_file: Optional[str] = '.env') -> RunConfig:
    """
    설정 파일과 .env를 읽어 RunConfig 생성

    Args:
        config_path: YAML 경로 (None이면 기본 경로가 있을 때만 읽음)
        args: 명령행 값
        env_file: .env 경로 (있으면 환경 변수로 적재)

    Returns:
        RunConfig
    """
    if env_file and Path(env_file).exists():
        load_dotenv(env_file, override=False)
    if config_path is not None:
        config = load_config(config_path)
    elif Path(DEFAULT_CONFIG_PATH).exists():
        config = load_config(DEFAULT_CONFIG_PATH)
    else:
        config = {}
    run_config = RunConfig.from_sources(args, config)
    logger.debug(f"실행 설정: {run_config}")
    return run_config
