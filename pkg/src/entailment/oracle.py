"""
함의 판정 오라클
순서: 보조정리 레지스트리 → 구문 검사 → 쿠퍼(인덱스 없는 선형 단편 또는 유한 폭) → 외부 solver → Unknown
오라클 쪽 오류는 밖으로 던지지 않고 Unknown(이유)로 접는다
"""
import logging
from typing import List, Optional

from src.presburger import formula as pf
from src.presburger.cooper import DEFAULT_MAX_DNF, CooperEngine
from src.assertions.lowering import IndexedFragment, NonlinearAtom, lower, to_predicate
from src.assertions.normalize import alpha_equivalent, canonicalize, nnf_predicate
from src.assertions.predicate import (
    And, Bot, Exists, ExistsIdx, ExistsVec, Fin, Forall, ForallIdx, ForallVec, Iff, Implies,
    IndexVal, Lt, Not, Or, Svar, Top, TOP, free_vars, has_fin, is_index_free, map_children,
)
from src.entailment.lemmas import LemmaRegistry
from src.entailment.solver import SolverBridge
from src.entailment.verdict import Invalid, Trusted, Unknown, Valid, Verdict

logger = logging.getLogger(__name__)

FIN_BOUND = 'c#fin'


def cooper_eliminate(p, max_dnf: int = DEFAULT_MAX_DNF):
    """
    인덱스 없는 선형 단언의 한정자 제거

    Args:
        p: 단언

    Returns:
        같은 뜻의 한정자 없는 단언

    Raises:
        IndexedFragment, NonlinearAtom
    """
    if not is_index_free(p) or has_fin(p):
        raise IndexedFragment("cooper elimination needs an index-free predicate")
    return to_predicate(CooperEngine(max_dnf).eliminate(lower(p)))


class _FinUnderIff(Exception):
    pass


def rewrite_fin(p, positive: bool = True):
    """
    Fin 원자 극성 치환: 양극성은 유계형 ∃c. ∀i ≥ 1. (φ(i) ⟹ i ≤ c)로 강화, 음극성은 ⊤로 약화
    (치환된 공식이 타당하면 원래 공식도 타당하다)
    """
    if isinstance(p, Fin):
        if not positive:
            return TOP
        bound = Not(Lt(Svar(FIN_BOUND), IndexVal(p.var)))
        return Exists((FIN_BOUND,), ForallIdx(p.var, Implies(p.body, bound)))
    if isinstance(p, Not):
        return Not(rewrite_fin(p.arg, not positive))
    if isinstance(p, Implies):
        return Implies(rewrite_fin(p.a, not positive), rewrite_fin(p.b, positive))
    if isinstance(p, Iff):
        if has_fin(p):
            raise _FinUnderIff()
        return p
    if isinstance(p, (And, Or, Exists, Forall, ExistsIdx, ForallIdx, ExistsVec, ForallVec)):
        return map_children(p, lambda c: rewrite_fin(c, positive))
    return p


def _facts(p) -> List:
    """가정의 최상위 논리곱 원소 (∃ 본문 안의 것도 묶인 이름을 쓰지 않으면 포함)"""
    p = canonicalize(p)
    out = []
    stack = [p]
    while stack:
        node = stack.pop()
        if isinstance(node, And):
            stack.extend(node.args)
        elif isinstance(node, (Exists, ExistsVec)):
            bound = set(node.names)
            for fact in _facts(node.body):
                fv = free_vars(fact)
                if not (bound & (fv.vectors | fv.scalars)):
                    out.append(fact)
        else:
            out.append(node)
    return out


def _conjuncts(p) -> List:
    p = canonicalize(p)
    return list(p.args) if isinstance(p, And) else [p]


class EntailmentOracle:
    """
    함의/타당성 판정 파사드

    Args:
        solver: 외부 solver 연결 (None이면 없음)
        max_dnf: 쿠퍼 DNF 전개 상한
        width: 유한 폭 (None이면 무한 인덱스 해석)
    """

    def __init__(self, solver: Optional[SolverBridge] = None, max_dnf: int = DEFAULT_MAX_DNF,
                 width: Optional[int] = None):
        self.solver = solver
        self.engine = CooperEngine(max_dnf)
        self.width = width

    # -- 타당성 ---------------------------------------------------------------

    def decide_validity(self, p) -> Verdict:
        """
        단언의 타당성 판정

        Args:
            p: 단언

        Returns:
            Valid / Invalid(반례) / Unknown(이유)
        """
        try:
            return self._decide(p)
        except (ValueError, RuntimeError) as e:
            logger.debug(f"판정 실패: {e}")
            return Unknown(str(e) or type(e).__name__)

    def _decide(self, p) -> Verdict:
        if self.width is not None:
            return self._decide_lowered(p, self.width)
        if has_fin(p):
            try:
                rewritten = rewrite_fin(p)
            except _FinUnderIff:
                return Unknown("finiteness atom under iff")
            verdict = self._decide_unbounded(rewritten)
            if isinstance(verdict, Valid):
                return verdict
            return Unknown("finiteness rewrite is incomplete")
        return self._decide_unbounded(p)

    def _decide_unbounded(self, p) -> Verdict:
        if is_index_free(p):
            try:
                return self._decide_lowered(p, None)
            except NonlinearAtom as e:
                return self._ask_solver(p, str(e))
        return self._ask_solver(p, "indexed fragment")

    def _decide_lowered(self, p, width: Optional[int]) -> Verdict:
        try:
            f = lower(p, width)
        except NonlinearAtom as e:
            return self._ask_solver(p, str(e))
        closed = self.engine.eliminate(pf.forall(sorted(pf.free_vars(f).items()), f))
        if closed == pf.TRUE:
            return Valid()
        model = self.engine.find_model(pf.not_(f))
        if model is None:
            return Unknown("no countermodel found for a non-valid formula")
        return Invalid(model)

    def _ask_solver(self, p, why: str) -> Verdict:
        if self.solver is None or not self.solver.available:
            return Unknown(f"{why}: no solver configured")
        verdict = self.solver.check_validity(p, self.width)
        if isinstance(verdict, Unknown) and verdict.reason == "solver reported sat":
            logger.warning("solver가 반례 존재(sat)를 보고함")
        return verdict

    # -- 함의 -----------------------------------------------------------------

    def check_implication(self, hyp, concl, registry: Optional[LemmaRegistry] = None) -> Verdict:
        """
        hyp ⟹ concl 판정 (레지스트리 → 구문 → 결정 절차)

        Args:
            hyp: 가정
            concl: 결론
            registry: 신뢰 보조정리

        Returns:
            Verdict
        """
        if registry is not None:
            lemma_id = registry.match(hyp, concl)
            if lemma_id is not None:
                logger.debug(f"보조정리 적용: {lemma_id}")
                return Trusted(lemma_id)
        if self.syntactically_entails(hyp, concl):
            return Valid()
        return self.decide_validity(Implies(hyp, concl))

    @staticmethod
    def syntactically_entails(hyp, concl) -> bool:
        """판정 없이 알 수 있는 함의 (⊥ 가정, ⊤ 결론, 결론 논리곱이 모두 가정 사실)"""
        hyp_c = canonicalize(hyp)
        if isinstance(hyp_c, Bot) or isinstance(canonicalize(concl), Top):
            return True
        if alpha_equivalent(nnf_predicate(hyp), nnf_predicate(concl)):
            return True
        facts = _facts(hyp_c)
        return all(any(alpha_equivalent(f, c) for f in facts) for c in _conjuncts(concl))
