"""
신뢰 보조정리(lemma) 레지스트리
증명 파일의 (lemmas (lemma <id> <pred>)*)에서 읽으며, 판정 없이 받아들인 의무는 반드시 lemma id를 남긴다
"""
import logging
from collections import OrderedDict
from typing import Iterator, Optional, Tuple

from src.assertions.normalize import alpha_equivalent, canonicalize
from src.assertions.predicate import Implies, Top

logger = logging.getLogger(__name__)


class LemmaRegistry:
    """등록 순서를 유지하는 (id → 단언) 레지스트리"""

    def __init__(self):
        self._lemmas: 'OrderedDict[str, object]' = OrderedDict()

    def register(self, lemma_id: str, predicate) -> None:
        """
        보조정리 등록

        Args:
            lemma_id: 식별자
            predicate: (implies H C) 형태 또는 일반 단언
        """
        if lemma_id in self._lemmas:
            raise ValueError(f"duplicate lemma id: {lemma_id}")
        self._lemmas[lemma_id] = predicate
        logger.debug(f"보조정리 등록: {lemma_id}")

    def __len__(self) -> int:
        return len(self._lemmas)

    def __iter__(self) -> Iterator[Tuple[str, object]]:
        return iter(self._lemmas.items())

    def __contains__(self, lemma_id: str) -> bool:
        return lemma_id in self._lemmas

    def get(self, lemma_id: str):
        return self._lemmas.get(lemma_id)

    def match(self, hyp, concl) -> Optional[str]:
        """
        함의 hyp ⟹ concl과 α-동치인 보조정리 검색

        Args:
            hyp: 가정
            concl: 결론

        Returns:
            일치하는 첫 lemma id 또는 None
        """
        hyp, concl = canonicalize(hyp), canonicalize(concl)
        whole = Implies(hyp, concl)
        for lemma_id, pred in self._lemmas.items():
            pred = canonicalize(pred)
            if isinstance(pred, Implies):
                if alpha_equivalent(pred.a, hyp) and alpha_equivalent(pred.b, concl):
                    return lemma_id
            elif alpha_equivalent(pred, whole) or (isinstance(hyp, Top) and alpha_equivalent(pred, concl)):
                return lemma_id
        return None
