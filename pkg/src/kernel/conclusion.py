"""
비실현성 결론 모듈
검사된 최종 판단 {|P|} Start {|Q|}와 합성 문제 명세로부터 Unrealizable / Inconclusive를 내린다.
Realizable은 절대 내리지 않는다
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from src.core.problem import SynthesisProblem
from src.assertions.predicate import Exists, ForallVec, Implies, Not, free_vars
from src.entailment.oracle import EntailmentOracle
from src.entailment.verdict import is_discharged
from src.kernel.judgment import Judgment, describe_subject, same_subject
from src.kernel.report import CertificateReport, Obligation

logger = logging.getLogger(__name__)


class ConclusionError(ValueError):
    """최종 판단의 주어가 문제의 시작 비단말이 아님"""


@dataclass(frozen=True)
class Unrealizable:
    obligations: Tuple[Obligation, ...] = ()

    def __str__(self) -> str:
        return "Unrealizable"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    obligations: Tuple[Obligation, ...] = ()

    def __str__(self) -> str:
        return f"Inconclusive ({self.reason})"


def conclude_unrealizability(problem: SynthesisProblem, report: CertificateReport,
                             final: Optional[Judgment], oracle: EntailmentOracle):
    """
    최종 판단이 문제의 비실현성을 보이는지 판정

    기호 변수가 없으면 I ⟹ P 와 Q ⟹ ¬ψ 두 함의를,
    있으면 I ⟹ P 와 ∃v_aux. ∀상태. (Q ⟹ ¬ψ) 의 타당성을 확인한다

    Args:
        problem: 합성 문제
        report: 증명 검사 보고서
        final: 루트 판단 (report.root)
        oracle: 함의 오라클

    Returns:
        Unrealizable 또는 Inconclusive

    Raises:
        ConclusionError: 판단 주어가 시작 비단말과 다를 때
    """
    if not report.accepted or final is None:
        return Inconclusive("proof was rejected")
    g = problem.grammar
    if not same_subject(g, final.subject, problem.start):
        raise ConclusionError(f"final triple is about {describe_subject(g, final.subject)}, "
                              f"not the start nonterminal {problem.start}")

    negated = Not(problem.output_spec)
    obligations = [Obligation("input", Implies(problem.input_spec, final.pre),
                              oracle.check_implication(problem.input_spec, final.pre))]
    if not problem.symbolic_vars:
        obligations.append(Obligation("output", Implies(final.post, negated),
                                      oracle.check_implication(final.post, negated)))
    else:
        body = Implies(final.post, negated)
        vectors = tuple(sorted(free_vars(body).vectors))
        closed = Exists(problem.symbolic_vars, ForallVec(vectors, body) if vectors else body)
        obligations.append(Obligation("output", closed, oracle.decide_validity(closed)))

    failed = [ob for ob in obligations if not is_discharged(ob.verdict)]
    if failed:
        reason = '; '.join(f"{ob.label} obligation {ob.verdict}" for ob in failed)
        logger.info(f"비실현성 결론 보류: {reason}")
        return Inconclusive(reason, tuple(obligations))
    logger.info("비실현성 결론: Unrealizable")
    return Unrealizable(tuple(obligations))
