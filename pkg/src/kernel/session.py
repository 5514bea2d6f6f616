"""
증명 검사 세션
문법, 함의 오라클, 보조정리 레지스트리와 노드 경로별 새 이름 공급기를 묶는다
"""
import logging
from typing import Dict, Iterable, Optional

from src.core.grammar import Grammar
from src.assertions.predicate import base_name
from src.entailment.lemmas import LemmaRegistry
from src.entailment.oracle import EntailmentOracle
from src.entailment.verdict import Verdict

logger = logging.getLogger(__name__)


class Session:
    """
    검사 세션

    새 이름은 'base#<노드 경로>_<k>' 형태이다.
    카운터가 노드 경로별로 나뉘므로 형제 부분 트리의 이름은 겹치지 않는다.

    Args:
        grammar: 문법
        oracle: 함의 오라클
        registry: 신뢰 보조정리 (None이면 빈 레지스트리)
    """

    def __init__(self, grammar: Grammar, oracle: EntailmentOracle,
                 registry: Optional[LemmaRegistry] = None):
        self.grammar = grammar
        self.oracle = oracle
        self.registry = registry if registry is not None else LemmaRegistry()
        self._counters: Dict[str, int] = {}

    def fresh(self, base: str, path: str) -> str:
        """
        새 이름 하나

        Args:
            base: 기본 이름 (새 이름이면 기본 부분만 쓴다)
            path: 노드 경로

        Returns:
            세션 안에서 유일한 이름
        """
        k = self._counters.get(path, 0) + 1
        self._counters[path] = k
        return f"{base_name(base)}#{path}_{k}"

    def copies(self, names: Iterable[str], path: str) -> Dict[str, str]:
        """이름마다 새 복사본 하나씩"""
        return {name: self.fresh(name, path) for name in names}

    def implies(self, hyp, concl) -> Verdict:
        """hyp ⟹ concl 의무 판정"""
        verdict = self.oracle.check_implication(hyp, concl, self.registry)
        logger.debug(f"의무 판정: {verdict}")
        return verdict
