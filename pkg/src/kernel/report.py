"""
인증 보고서(CertificateReport) 모듈
노드별 판정, 의무, 신뢰 보조정리 사용을 모으고 text/json으로 렌더링한다
"""
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.assertions.parser import parse_predicate, render_predicate
from src.entailment.verdict import Invalid, Trusted, Verdict, is_discharged, verdict_from_json


class NodeStatus(Enum):
    ACCEPTED = 'Accepted'
    RULE_SHAPE_ERROR = 'RuleShapeError'
    OBLIGATION_FAILED = 'ObligationFailed'


class Overall(Enum):
    VERIFIED = 'Verified'
    VERIFIED_WITH_TRUST = 'VerifiedWithTrust'
    REJECTED = 'Rejected'


@dataclass(frozen=True)
class Obligation:
    """부수 조건 하나: formula는 (implies hyp concl)"""
    label: str
    formula: object
    verdict: Verdict

    @property
    def discharged(self) -> bool:
        return is_discharged(self.verdict)


@dataclass(frozen=True)
class NodeReport:
    """
    노드 판정

    Attributes:
        path: 점으로 구분한 자식 인덱스 경로 ("0", "0.1", ...)
        rule: 규칙 이름
        status: 판정
        detail: 오류 설명 (Accepted면 빈 문자열)
        conclusion: 결론 삼중쌍 표기 (만들지 못했으면 빈 문자열)
        obligations: 이 노드가 낸 의무
    """
    path: str
    rule: str
    status: NodeStatus
    detail: str = ''
    conclusion: str = ''
    obligations: Tuple[Obligation, ...] = ()


@dataclass(frozen=True)
class CertificateReport:
    """
    증명 검사 결과 (노드는 후위 순서)

    root는 결론 판단 객체이며 비교와 json에는 포함되지 않는다
    """
    nodes: Tuple[NodeReport, ...]
    root: object = field(default=None, compare=False)

    @property
    def obligations(self) -> List[Tuple[str, Obligation]]:
        return [(n.path, ob) for n in self.nodes for ob in n.obligations]

    @property
    def trusted(self) -> Tuple[str, ...]:
        """신뢰 의무의 lemma id (사용 순서, 중복 포함)"""
        return tuple(ob.verdict.lemma_id for _, ob in self.obligations if isinstance(ob.verdict, Trusted))

    @property
    def undischarged(self) -> int:
        return sum(1 for _, ob in self.obligations if not ob.discharged)

    @property
    def overall(self) -> Overall:
        if any(n.status is not NodeStatus.ACCEPTED for n in self.nodes) or not self.nodes:
            return Overall.REJECTED
        if self.trusted:
            return Overall.VERIFIED_WITH_TRUST
        return Overall.VERIFIED

    @property
    def accepted(self) -> bool:
        return self.overall is not Overall.REJECTED

    def summary(self) -> str:
        """첫 줄 요약"""
        overall = self.overall
        if overall is Overall.VERIFIED:
            return f"Verified ({len(self.nodes)} nodes, 0 trusted)"
        if overall is Overall.VERIFIED_WITH_TRUST:
            lemmas = list(dict.fromkeys(self.trusted))
            return f"VerifiedWithTrust ({len(self.trusted)} lemmas: {', '.join(lemmas)})"
        shape = sum(1 for n in self.nodes if n.status is NodeStatus.RULE_SHAPE_ERROR)
        invalid = sum(1 for _, ob in self.obligations if isinstance(ob.verdict, Invalid))
        if not shape and not invalid and self.nodes:
            return f"Rejected (structurally checked, {self.undischarged} obligations undischarged)"
        failing = sum(1 for n in self.nodes if n.status is not NodeStatus.ACCEPTED)
        return f"Rejected ({failing} failing nodes)"


def node_failure(path: str, rule: str, detail: str) -> NodeReport:
    return NodeReport(path, rule, NodeStatus.RULE_SHAPE_ERROR, detail)


# ---------------------------------------------------------------------------
# 렌더링
# ---------------------------------------------------------------------------

def _node_line(n: NodeReport) -> str:
    line = f"  [{n.path}] {n.rule}: {n.status.value}"
    if n.detail:
        line += f": {n.detail}"
    return line


def report_to_json(report: CertificateReport) -> dict:
    return {
        'status': report.overall.value,
        'trusted': list(report.trusted),
        'nodes': [
            {
                'path': n.path,
                'rule': n.rule,
                'status': n.status.value,
                'detail': n.detail,
                'conclusion': n.conclusion,
                'obligations': [
                    {'label': ob.label, 'formula': render_predicate(ob.formula), 'verdict': ob.verdict.to_json()}
                    for ob in n.obligations
                ],
            }
            for n in report.nodes
        ],
    }


def report_from_json(data) -> CertificateReport:
    """
    report_to_json / render_report(fmt='json')의 역

    Args:
        data: json 텍스트 또는 딕셔너리

    Returns:
        CertificateReport
    """
    if isinstance(data, str):
        data = json.loads(data)
    nodes = []
    for entry in data.get('nodes', []):
        obligations = tuple(
            Obligation(ob['label'], parse_predicate(ob['formula']), verdict_from_json(ob['verdict']))
            for ob in entry.get('obligations', [])
        )
        nodes.append(NodeReport(entry['path'], entry['rule'], NodeStatus(entry['status']),
                                entry.get('detail', ''), entry.get('conclusion', ''), obligations))
    return CertificateReport(tuple(nodes))


def render_report(report: CertificateReport, fmt: str = 'text', conclusion: Optional[str] = None) -> str:
    """
    보고서 렌더링

    Args:
        report: 보고서
        fmt: 'text' 또는 'json'
        conclusion: 비실현성 결론 줄 (있으면 마지막에 추가)

    Returns:
        텍스트
    """
    if fmt == 'json':
        data = report_to_json(report)
        if conclusion is not None:
            data['conclusion'] = conclusion
        return json.dumps(data, ensure_ascii=False, indent=2)
    if fmt != 'text':
        raise ValueError(f"unknown report format: {fmt}")
    lines = [report.summary()]
    lines.extend(_node_line(n) for n in report.nodes)
    obligations = report.obligations
    if obligations:
        lines.append("Obligations:")
        for path, ob in obligations:
            lines.append(f"  [{path}] {ob.label}: {ob.verdict}")
            if not ob.discharged:
                lines.append(f"      {render_predicate(ob.formula)}")
    if conclusion is not None:
        lines.append(f"Conclusion: {conclusion}")
    return '\n'.join(lines)
