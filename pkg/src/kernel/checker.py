"""
증명 검사기
후위 순서로 노드를 규칙별 검사기에 보내고, 부수 조건을 함의 오라클에 넘겨 보고서를 만든다.

식/문장 규칙의 결론 사후조건은 템플릿과 (새 이름 정규화 후) 구문적으로 같아야 하며,
의미적 약화는 반드시 Weaken 노드로 드러나야 한다.
구멍(_)은 부모의 기대값 또는 규칙 템플릿으로 채운다.
HP가 추가한 가설은 식/문장 규칙 아래에서만 ApplyHP로 쓸 수 있다
"""
import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from src.core.grammar import Production
from src.core.terms import RESERVED_BOOL, RESERVED_INT, Op
from src.assertions.parser import render_predicate
from src.assertions.predicate import And, Implies, free_vars, is_bool_name
from src.assertions.substitution import substitute_vectors
from src.entailment.lemmas import LemmaRegistry
from src.entailment.oracle import EntailmentOracle
from src.entailment.verdict import is_discharged
from src.kernel import templates
from src.kernel.judgment import (
    Judgment, Subject, Triple, covered_productions, describe_subject, release_hypotheses,
    render_triple, same_predicate, same_subject, subject_production, subject_vars, subject_within,
)
from src.kernel.proof_file import EXPRESSION_RULES, STATEMENT_RULES, ProofNode
from src.kernel.report import CertificateReport, NodeReport, NodeStatus, Obligation
from src.kernel.session import Session

logger = logging.getLogger(__name__)

RULE_OPS = {
    'Zero': Op.ZERO, 'One': Op.ONE, 'True': Op.TRUE, 'False': Op.FALSE, 'Var': Op.VAR,
    'Not': Op.NOT, 'Plus': Op.PLUS, 'Minus': Op.MINUS, 'Mult': Op.MULT, 'Div': Op.DIV,
    'LT': Op.LT, 'Eq': Op.EQ, 'And': Op.AND,
    'Assign': Op.ASSIGN, 'Seq': Op.SEQ, 'ITE': Op.ITE, 'While': Op.WHILE,
}
TEMPLATE_RULES = EXPRESSION_RULES + STATEMENT_RULES


class RuleShapeError(Exception):
    """노드 모양이 규칙과 맞지 않음 (보고서 항목이 되며 밖으로 나가지 않는다)"""


@dataclass(frozen=True)
class Expectation:
    """
    부모가 자식에게 주는 기대값

    Attributes:
        pre: 기대 사전조건 (None이면 없음)
        pre_hard: False면 기본값일 뿐이라 작성된 값이나 가설이 덮어쓸 수 있다
        subject: 기대 주어
        post: 기대 사후조건 (항상 일치해야 함)
    """
    pre: object = None
    pre_hard: bool = True
    subject: Optional[Subject] = None
    post: object = None


class _Frame:
    """노드 하나의 의무 수집기"""

    def __init__(self, session: Session):
        self.session = session
        self.obligations: List[Obligation] = []

    def oblige(self, label: str, hyp, concl):
        verdict = self.session.implies(hyp, concl)
        self.obligations.append(Obligation(label, Implies(hyp, concl), verdict))

    def oblige_unless_same(self, label: str, hyp, concl):
        if not same_predicate(hyp, concl):
            self.oblige(label, hyp, concl)

    @property
    def failed(self) -> List[Obligation]:
        return [ob for ob in self.obligations if not is_discharged(ob.verdict)]


class ProofChecker:
    """
    증명 트리 검사기

    Args:
        session: 검사 세션 (문법, 오라클, 보조정리, 새 이름)
    """

    def __init__(self, session: Session):
        self.session = session
        self.grammar = session.grammar
        self.reports: List[NodeReport] = []

    def run(self, root: ProofNode) -> CertificateReport:
        """
        루트(빈 가설 문맥)부터 검사

        Args:
            root: 증명 트리

        Returns:
            CertificateReport (root 필드에 결론 판단)
        """
        self.reports = []
        judgment = self.visit(root, (), Expectation(), '0')
        report = CertificateReport(tuple(self.reports), judgment)
        logger.info(f"증명 검사 완료: {report.summary()}")
        return report

    # -- 공통 ------------------------------------------------------------------

    def visit(self, node: ProofNode, ctx: Tuple[Triple, ...], exp: Expectation, path: str) -> Optional[Judgment]:
        """
        노드 하나 검사 (자식 먼저)

        Returns:
            결론 판단 (모양 오류면 None)
        """
        frame = _Frame(self.session)
        try:
            pre, pre_soft = self._resolve_pre(node, exp)
            subject = self._resolve_subject(node, exp)
            handler = getattr(self, f"_rule_{node.rule}", None) if node.rule not in TEMPLATE_RULES \
                else self._rule_template
            post = node.post if node.post is not None else exp.post
            judgment = handler(node, ctx, pre, pre_soft, subject, post, path, frame)
            if node.simplify is not None:
                if node.rule not in TEMPLATE_RULES:
                    raise RuleShapeError("simplify is only allowed on expression and statement rules")
                frame.oblige_unless_same("simplify", judgment.post, node.simplify)
                frame.oblige_unless_same("simplify-back", node.simplify, judgment.post)
                judgment = replace(judgment, post=node.simplify)
            self._check_written(node, exp, judgment)
        except RuleShapeError as e:
            logger.debug(f"[{path}] {node.rule}: {e}")
            self.reports.append(NodeReport(path, node.rule, NodeStatus.RULE_SHAPE_ERROR, str(e), '',
                                           tuple(frame.obligations)))
            return None
        except (ValueError, RuntimeError) as e:
            self.reports.append(NodeReport(path, node.rule, NodeStatus.RULE_SHAPE_ERROR,
                                           f"{type(e).__name__}: {e}", '', tuple(frame.obligations)))
            return None

        failed = frame.failed
        status = NodeStatus.OBLIGATION_FAILED if failed else NodeStatus.ACCEPTED
        detail = '; '.join(f"{ob.label} obligation {ob.verdict}" for ob in failed)
        self.reports.append(NodeReport(path, node.rule, status, detail,
                                       render_triple(self.grammar, judgment), tuple(frame.obligations)))
        return judgment

    @staticmethod
    def _resolve_pre(node: ProofNode, exp: Expectation):
        if node.pre is not None:
            if exp.pre is not None and exp.pre_hard:
                if not same_predicate(node.pre, exp.pre):
                    raise RuleShapeError(
                        f"precondition {render_predicate(node.pre)} does not match the expected "
                        f"{render_predicate(exp.pre)}")
                return exp.pre, False
            return node.pre, False
        if exp.pre is None:
            return None, False
        return exp.pre, not exp.pre_hard

    def _resolve_subject(self, node: ProofNode, exp: Expectation) -> Optional[Subject]:
        if node.subject is not None and exp.subject is not None:
            if not same_subject(self.grammar, node.subject, exp.subject):
                raise RuleShapeError(
                    f"subject {describe_subject(self.grammar, node.subject)} does not match the expected "
                    f"{describe_subject(self.grammar, exp.subject)}")
            return exp.subject
        return node.subject if node.subject is not None else exp.subject

    def _check_written(self, node: ProofNode, exp: Expectation, j: Judgment):
        """작성된 값과 확정 기대값이 결론과 맞는지 확인"""
        if node.pre is not None and not same_predicate(node.pre, j.pre):
            raise RuleShapeError(f"precondition does not match the {node.rule} conclusion "
                                 f"{render_predicate(j.pre)}")
        if exp.pre is not None and exp.pre_hard and not same_predicate(exp.pre, j.pre):
            raise RuleShapeError(f"precondition {render_predicate(j.pre)} does not match the expected "
                                 f"{render_predicate(exp.pre)}")
        if node.post is not None and not same_predicate(node.post, j.post):
            raise RuleShapeError(f"postcondition does not match the {node.rule} conclusion "
                                 f"{render_predicate(j.post)}")
        if exp.post is not None and not same_predicate(exp.post, j.post):
            raise RuleShapeError(f"postcondition {render_predicate(j.post)} does not match the expected "
                                 f"{render_predicate(exp.post)}")

    def _child(self, node: ProofNode, k: int, ctx, exp: Expectation, path: str) -> Judgment:
        child_path = f"{path}.{k}"
        judgment = self.visit(node.children[k], ctx, exp, child_path)
        if judgment is None:
            raise RuleShapeError(f"premise {child_path} was rejected")
        return judgment

    @staticmethod
    def _arity(node: ProofNode, n: int):
        if len(node.children) != n:
            raise RuleShapeError(f"{node.rule} expects {n} premise(s), got {len(node.children)}")

    @staticmethod
    def _need(value, what: str):
        if value is None:
            raise RuleShapeError(f"cannot infer {what}")
        return value

    # -- 식/문장 규칙 -----------------------------------------------------------

    def _rule_template(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        g = self.grammar
        subject = self._need(subject, "subject")
        pre = self._need(pre, "precondition")
        production = subject_production(g, subject)
        op = RULE_OPS[node.rule]
        if production is None or production.rhs.is_chain:
            raise RuleShapeError(f"{node.rule} needs a single production, got {describe_subject(g, subject)}")
        if production.rhs.op is not op:
            raise RuleShapeError(f"rule {node.rule} does not match production {describe_subject(g, production)}")
        args = production.rhs.args
        s = self.session
        inner = release_hypotheses(ctx)

        if op in templates.NULLARY_OPS:
            self._arity(node, 0)
            target = RESERVED_BOOL if op in (Op.TRUE, Op.FALSE) else RESERVED_INT
            post = templates.post_nullary(op, pre, s.fresh(target, path), production.rhs.name)

        elif op is Op.NOT:
            self._arity(node, 1)
            q = self._child(node, 0, inner, Expectation(pre, True, args[0]), path).post
            post = templates.post_not(q, s.fresh(RESERVED_BOOL, path))

        elif op in templates.ARITH_OPS or op in templates.COMPARE_OPS or op is Op.AND:
            self._arity(node, 2)
            order = templates.ghost_vectors(pre, subject_vars(g, subject))
            v1, v2 = s.copies(order, path), s.copies(order, path)
            q1 = self._child(node, 0, inner, Expectation(templates.extended_pre(pre, v1, order), True, args[0]), path).post
            q2 = self._child(node, 1, inner, Expectation(templates.extended_pre(pre, v2, order), True, args[1]), path).post
            v1p, v2p = s.copies(order, path), s.copies(order, path)
            target = RESERVED_INT if op in templates.ARITH_OPS else RESERVED_BOOL
            post = templates.post_binary(op, pre, q1, q2, order, v1, v2, v1p, v2p, s.fresh(target, path))

        elif op is Op.ASSIGN:
            self._arity(node, 1)
            q = self._child(node, 0, inner, Expectation(pre, True, args[0]), path).post
            name = production.rhs.name
            post = templates.post_assign(name, q, s.fresh(name, path))

        elif op is Op.SEQ:
            self._arity(node, 2)
            q = self._child(node, 0, inner, Expectation(pre, True, args[0]), path).post
            post = self._child(node, 1, inner, Expectation(q, True, args[1]), path).post

        elif op is Op.ITE:
            self._arity(node, 3)
            order = templates.ghost_vectors(pre, subject_vars(g, subject))
            p_b = self._child(node, 0, inner, Expectation(pre, True, args[0]), path).post
            v1, v2 = s.copies(order, path), s.copies(order, path)
            q1 = self._child(node, 1, inner, Expectation(templates.extended_pre(p_b, v1, order), True, args[1]), path).post
            q2 = self._child(node, 2, inner, Expectation(templates.extended_pre(p_b, v2, order), True, args[2]), path).post
            v1p, v2p = s.copies(order, path), s.copies(order, path)
            post = templates.post_ite(q1, q2, order, v1, v2, v1p, v2p)

        elif op is Op.WHILE:
            self._arity(node, 2)
            i_b = self._child(node, 0, inner, Expectation(pre, True, args[0]), path).post
            b_loop = s.fresh('b_loop', path)
            body_pre = templates.while_body_pre(i_b, b_loop)
            i_b2 = self._child(node, 1, inner, Expectation(body_pre, True, args[1]), path).post
            order = templates.while_order(i_b, i_b2, subject_vars(g, subject), b_loop)
            v1, v2 = s.copies(order, path), s.copies(order, path)
            hyp, concl = templates.while_side_condition(i_b, i_b2, order, b_loop, v1, v2)
            frame.oblige("loop", hyp, concl)
            post = templates.post_while(i_b)

        else:
            raise RuleShapeError(f"no rule for operator {op.keyword}")
        return Judgment(ctx, pre, subject, post)

    # -- 구조 규칙 ---------------------------------------------------------------

    def _rule_Weaken(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        self._arity(node, 1)
        child_node = node.children[0]
        child_subject = subject if child_node.subject is None else None
        child = self._child(node, 0, ctx, Expectation(pre, False, child_subject), path)
        pre = pre if pre is not None else child.pre
        subject = subject if subject is not None else child.subject
        post = post if post is not None else child.post
        if not subject_within(self.grammar, subject, child.subject):
            raise RuleShapeError(f"subject {describe_subject(self.grammar, subject)} is not contained in "
                                 f"{describe_subject(self.grammar, child.subject)}")
        frame.oblige_unless_same("pre", pre, child.pre)
        frame.oblige_unless_same("post", child.post, post)
        return Judgment(ctx, pre, subject, post)

    def _rule_Conj(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        self._arity(node, 2)
        first = self._child(node, 0, ctx, Expectation(pre, True, subject), path)
        second = self._child(node, 1, ctx, Expectation(first.pre, True, first.subject), path)
        return Judgment(ctx, first.pre, first.subject, And((first.post, second.post)))

    def _rule_GrmDisj(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        g = self.grammar
        subject = self._need(subject, "subject")
        if isinstance(subject, Production):
            raise RuleShapeError("GrmDisj needs a nonterminal subject")
        if len(node.children) < 2:
            raise RuleShapeError(f"GrmDisj expects at least 2 premises, got {len(node.children)}")
        prods = g.productions_of(subject)
        covered: Dict[int, str] = {}
        for k, child_node in enumerate(node.children):
            child_subject = self._need(child_node.subject, f"subject of premise {path}.{k}")
            indices = covered_productions(g, subject, child_subject)
            if indices is None:
                raise RuleShapeError(f"{describe_subject(g, child_subject)} is not part of {subject}")
            for j in indices:
                if j in covered:
                    raise RuleShapeError(f"production {describe_subject(g, prods[j])} is covered twice")
                covered[j] = f"{path}.{k}"
        missing = [describe_subject(g, prods[j]) for j in range(len(prods)) if j not in covered]
        if missing:
            raise RuleShapeError(f"missing production {', '.join(missing)}")
        for k in range(len(node.children)):
            child = self._child(node, k, ctx, Expectation(pre, True, None, post), path)
            pre, post = child.pre, child.post
        return Judgment(ctx, pre, subject, post)

    def _rule_Inv(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        self._arity(node, 0)
        subject = self._need(subject, "subject")
        pre = self._need(pre if pre is not None else post, "precondition")
        fv = free_vars(pre)
        clash = sorted(fv.vectors & subject_vars(self.grammar, subject))
        if clash:
            raise RuleShapeError(f"variable {clash[0]} of the invariant occurs in "
                                 f"{describe_subject(self.grammar, subject)}")
        return Judgment(ctx, pre, subject, pre)

    def _renamed_premise(self, node, ctx, subject, path, reserved_check: bool):
        self._arity(node, 1)
        if not node.renames:
            raise RuleShapeError(f"{node.rule} needs (ann rename (z y) ...)")
        child = self._child(node, 0, ctx, Expectation(None, True, subject), path)
        names = subject_vars(self.grammar, child.subject)
        for z, y in node.renames:
            if reserved_check:
                for name in (z, y):
                    if name in (RESERVED_INT, RESERVED_BOOL) or is_bool_name(name):
                        raise RuleShapeError(f"reserved variable {name} cannot be substituted")
                for name in (y, z):
                    if name in names:
                        raise RuleShapeError(f"variable {name} occurs in {describe_subject(self.grammar, child.subject)}")
        return child, dict(node.renames)

    def _rule_Sub1(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        child, mapping = self._renamed_premise(node, ctx, subject, path, True)
        return Judgment(ctx, substitute_vectors(child.pre, mapping), child.subject,
                        substitute_vectors(child.post, mapping))

    def _rule_Sub2(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        child, mapping = self._renamed_premise(node, ctx, subject, path, False)
        blocked = subject_vars(self.grammar, child.subject)
        fv = free_vars(child.post)
        blocked = blocked | fv.vectors | fv.scalars
        for z in mapping:
            if z in blocked:
                raise RuleShapeError(f"variable {z} occurs in {describe_subject(self.grammar, child.subject)} "
                                     f"or in the postcondition")
        return Judgment(ctx, substitute_vectors(child.pre, mapping), child.subject, child.post)

    def _rule_HP(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        g = self.grammar
        subject = self._need(subject, "subject")
        if isinstance(subject, Production):
            raise RuleShapeError("HP needs a nonterminal subject")
        pre = self._need(pre, "precondition")
        post = self._need(post, "postcondition")
        prods = g.productions_of(subject)
        indices = []
        for k, child_node in enumerate(node.children):
            if child_node.subject is None:
                indices.append(k if k < len(prods) else None)
                continue
            match = next((j for j, p in enumerate(prods)
                          if same_subject(g, child_node.subject, p) and j not in indices), None)
            if match is None:
                raise RuleShapeError(f"premise {path}.{k} subject "
                                     f"{describe_subject(g, child_node.subject)} is not a production of {subject}")
            indices.append(match)
        if None in indices:
            raise RuleShapeError(f"{subject} has only {len(prods)} production(s), got {len(node.children)} premises")
        missing = [describe_subject(g, prods[j]) for j in range(len(prods)) if j not in indices]
        if missing:
            raise RuleShapeError(f"missing production {', '.join(missing)}")
        if len(set(indices)) != len(indices):
            raise RuleShapeError("a production is covered twice")
        if indices != sorted(indices):
            raise RuleShapeError("premises must follow the production order")
        inner = ctx + (Triple(pre, subject, post, guarded=True),)
        for k, j in enumerate(indices):
            self._child(node, k, inner, Expectation(pre, True, prods[j], post), path)
        return Judgment(ctx, pre, subject, post)

    def _rule_ApplyHP(self, node, ctx, pre, pre_soft, subject, post, path, frame) -> Judgment:
        self._arity(node, 0)
        g = self.grammar
        subject = self._need(subject, "subject")
        if isinstance(subject, Production):
            raise RuleShapeError(f"ApplyHP needs a nonterminal subject, got {describe_subject(g, subject)}")
        # 주어와 이름이 같은 비단말의 가설만
        named = [t for t in ctx if t.subject == subject]
        candidates = [t for t in named if not t.guarded]
        if post is not None:
            candidates = [t for t in candidates if same_predicate(t.post, post)]
        matching = candidates
        if pre is not None:
            matching = [t for t in candidates if same_predicate(t.pre, pre)]
            if not matching and pre_soft and len(candidates) == 1:
                matching = candidates
        elif len(candidates) > 1:
            matching = []
        if not matching:
            if named and all(t.guarded for t in named):
                raise RuleShapeError(f"hypothesis for {subject} is only usable below an expression or "
                                     f"statement rule")
            shown = render_predicate(pre) if pre is not None else '_'
            raise RuleShapeError(f"hypothesis not in context: {{| {shown} |}} {describe_subject(g, subject)}")
        entry = matching[0]
        return Judgment(ctx, entry.pre if pre is None or pre_soft else pre, subject, entry.post)


def check_proof(tree: ProofNode, grammar, oracle: EntailmentOracle,
                registry: Optional[LemmaRegistry] = None) -> CertificateReport:
    """
    증명 트리 검사

    Args:
        tree: 루트 노드 (빈 가설 문맥)
        grammar: 문법
        oracle: 함의 오라클
        registry: 신뢰 보조정리

    Returns:
        CertificateReport (오류는 보고서 항목이 되며 예외로 나가지 않는다)
    """
    session = Session(grammar, oracle, registry)
    return ProofChecker(session).run(tree)


def check_document(doc, oracle: EntailmentOracle) -> CertificateReport:
    """읽어 들인 증명 파일(ProofDocument) 검사"""
    return check_proof(doc.root, doc.grammar, oracle, doc.registry())
