"""
kernel 패키지 테스트: 규칙 템플릿 정밀성, 증명 파일 리더, 규칙 검사, 보고서, 비실현성 결론
"""
import json
from itertools import product

import pytest

from src.core.grammar import parse_grammar
from src.core.problem import load_problem
from src.core.terms import FALSE, ONE, TRUE, ZERO, Op, binary, var
from src.semantics.evaluator import Fuel, eval_term
from src.semantics.falsifier import NoneFound, falsify_triple
from src.semantics.state import VectorState
from src.assertions.evaluation import eval_predicate, state_values
from src.assertions.lowering import lower
from src.assertions.parser import parse_predicate, render_predicate
from src.presburger import formula as pf
from src.presburger.cooper import eliminate
from src.entailment.oracle import EntailmentOracle
from src.entailment.solver import SolverBridge
from src.entailment.verdict import Invalid
from src.kernel import templates
from src.kernel.checker import check_document, check_proof
from src.kernel.conclusion import ConclusionError, Inconclusive, Unrealizable, conclude_unrealizability
from src.kernel.proof_file import ProofFormatError, load_proof, parse_proof
from src.kernel.report import NodeStatus, Overall, render_report, report_from_json
from src.utils.seed import make_rng
from tests.conftest import requires_solver

ASSIGN_GRAMMAR = """
(grammar (start S)
  (nt S stmt ((assign x Z)))
  (nt Z int ((lit 0))))
"""


def proof(body: str, width: int = 1) -> str:
    return f"(proof {ASSIGN_GRAMMAR} (width {width}) {body})"


def check_text(text: str):
    doc = parse_proof(text)
    return check_document(doc, EntailmentOracle(SolverBridge('none'), width=doc.width))


def check_file(path, backend: str = 'none'):
    doc = load_proof(path)
    oracle = EntailmentOracle(SolverBridge(backend), width=doc.width)
    return doc, oracle, check_document(doc, oracle)


# ---------------------------------------------------------------------------
# 템플릿 정밀성: 템플릿 사후조건의 모델 = 의미론으로 계산한 출력 집합
# ---------------------------------------------------------------------------

PRE = parse_predicate("(and (<= -2 x) (<= x 2))")
ORDER = ('b_t', 'e_t', 'x')
GRID = [(x, e, b) for x in range(-3, 4) for e in range(-3, 4) for b in (False, True)]


def _copies(tag: str):
    return {v: f"{v}#{tag}_1" for v in ORDER}


def _state(x, e, b):
    return VectorState.of(1, {'x': [x], 'e_t': [e]}, {'b_t': [b]})


@pytest.mark.parametrize("op", [Op.PLUS, Op.MINUS, Op.LT, Op.EQ])
def test_binary_template_is_precise(op):
    v1, v2, v1p, v2p = _copies('a'), _copies('b'), _copies('c'), _copies('d')
    q1 = templates.post_nullary(Op.VAR, templates.extended_pre(PRE, v1, ORDER), 'e_t#l_1', 'x')
    q2 = templates.post_nullary(Op.ONE, templates.extended_pre(PRE, v2, ORDER), 'e_t#r_1')
    target = 'e_t' if op in templates.ARITH_OPS else 'b_t'
    post = templates.post_binary(op, PRE, q1, q2, ORDER, v1, v2, v1p, v2p, f"{target}#o_1")

    term = binary(op, var('x'), ONE)
    reached = set()
    for x, e, b in GRID:
        if -2 <= x <= 2:
            out = eval_term(term, _state(x, e, b))
            reached.add((out.get('x', 1), out.get('e_t', 1), out.get('b_t', 1)))
    modelled = {s for s in GRID if eval_predicate(post, _state(*s))}
    assert modelled == {s for s in reached if s in set(GRID)}


INT_LEAVES = {Op.VAR: var('x'), Op.ONE: ONE, Op.ZERO: ZERO}
BOOL_LEAVES = {Op.TRUE: TRUE, Op.FALSE: FALSE}
RANDOM_OPS = (Op.PLUS, Op.MINUS, Op.LT, Op.EQ, Op.AND)


def _leaf_post(op, pre, shifted):
    return templates.post_nullary(op, pre, shifted, 'x' if op is Op.VAR else None)


def _cells_state(width, combo):
    xs, es, bs = combo[:width], combo[width:2 * width], combo[2 * width:]
    return VectorState.of(width, {'x': list(xs), 'e_t': list(es)}, {'b_t': list(bs)})


def _cells(sigma, width):
    return tuple(sigma.get(n, k) for n in ('x', 'e_t', 'b_t') for k in range(1, width + 1))


def _random_instance(rng, lo_bound, hi_bound):
    """임의의 사전조건 구간(과 합동 조건) 위의 이항 규칙 하나"""
    op = RANDOM_OPS[int(rng.integers(len(RANDOM_OPS)))]
    lo = int(rng.integers(lo_bound, hi_bound + 1))
    hi = int(rng.integers(lo, hi_bound + 1))
    text = f"(and (<= {lo} x) (<= x {hi}))"
    parity = None
    if rng.random() < 0.5:
        m = int(rng.integers(2, 4))
        r = int(rng.integers(0, m))
        text = f"(and {text} (mod= x {r} {m}))"
        parity = (r, m)
    leaves = BOOL_LEAVES if op is Op.AND else INT_LEAVES
    kinds = list(leaves)
    left, right = (kinds[int(rng.integers(len(kinds)))] for _ in range(2))

    def admits(v):
        return lo <= v <= hi and (parity is None or (v - parity[0]) % parity[1] == 0)

    return op, parse_predicate(text), admits, (left, right), binary(op, leaves[left], leaves[right])


@pytest.mark.parametrize("seed, width, count, values", [
    *[(seed, 1, 45, range(-4, 5)) for seed in range(10)],
    *[(seed, 2, 10, range(-2, 3)) for seed in range(5)],
])
def test_random_binary_templates_are_precise(seed, width, count, values):
    rng = make_rng(seed)
    grid = list(product(*([values] * (2 * width) + [(False, True)] * width)))
    on_grid = set(grid)
    for _ in range(count):
        op, pre, admits, (left, right), term = _random_instance(rng, values[0], values[-1])
        v1, v2, v1p, v2p = _copies('a'), _copies('b'), _copies('c'), _copies('d')
        shift = 'b_t' if op is Op.AND else 'e_t'
        q1 = _leaf_post(left, templates.extended_pre(pre, v1, ORDER), f"{shift}#l_1")
        q2 = _leaf_post(right, templates.extended_pre(pre, v2, ORDER), f"{shift}#r_1")
        target = 'e_t' if op in templates.ARITH_OPS else 'b_t'
        post = templates.post_binary(op, pre, q1, q2, ORDER, v1, v2, v1p, v2p, f"{target}#o_1")

        f = eliminate(lower(post, width))
        modelled = {c for c in grid if pf.evaluate(f, state_values(_cells_state(width, c)))}
        reached = set()
        for c in grid:
            if all(admits(v) for v in c[:width]):
                reached.add(_cells(eval_term(term, _cells_state(width, c)), width))
        assert modelled == reached & on_grid, f"{op.keyword} {render_predicate(pre)} {term}"


def test_assign_template_is_precise():
    premise = templates.post_nullary(Op.ONE, PRE, 'e_t#z_1')
    post = templates.post_assign('x', premise, 'x#z_2')
    modelled = {s for s in GRID if eval_predicate(post, _state(*s))}
    assert modelled == {(1, 1, b) for b in (False, True)}


def test_ite_projection_keeps_taken_branch():
    moved = templates._project(parse_predicate("(= x 7)"), ('x',), {'x': 'x#f_1'}, 'g', True)
    taken = VectorState.of(1, {'x': [7], 'x#f_1': [0]}, {'g': [True]})
    skipped = VectorState.of(1, {'x': [0], 'x#f_1': [7]}, {'g': [False]})
    assert eval_predicate(moved, taken) and eval_predicate(moved, skipped)


# ---------------------------------------------------------------------------
# 증명 파일 리더
# ---------------------------------------------------------------------------

class TestProofFile:
    def test_macros_and_defs(self):
        doc = parse_proof(f"""
            (proof {ASSIGN_GRAMMAR}
              (pred ONE (= x 1))
              (def zero (node Zero))
              (node Assign (triple @ONE (nt S) _) (use zero)))""")
        assert doc.root.rule == 'Assign'
        assert doc.root.pre == parse_predicate("(= x 1)")
        assert doc.root.children[0].rule == 'Zero'
        assert doc.root.size() == 2

    @pytest.mark.parametrize("body, message", [
        ("(node Foo)", "unknown rule Foo"),
        ("(node Zero (triple @NOPE (nt Z) _))", "unknown predicate macro NOPE"),
        ("(node Zero (triple _ (nt Q) _))", "unknown nonterminal Q"),
        ("(use missing)", "unknown proof definition missing"),
    ])
    def test_format_errors(self, body, message):
        with pytest.raises(ProofFormatError, match=message):
            parse_proof(proof(body))

    def test_recursive_definition(self):
        with pytest.raises(ProofFormatError, match="recursive proof definition"):
            parse_proof(f"(proof {ASSIGN_GRAMMAR} (def a (node Assign (use a))) (use a))")

    def test_missing_grammar(self):
        with pytest.raises(ProofFormatError, match="no \\(problem"):
            parse_proof("(proof (node Zero))")

    def test_problem_width_is_inherited(self, golden):
        doc = load_proof(golden('mod6_steps_start.ulp'))
        assert doc.problem is not None
        assert doc.width == 1


# ---------------------------------------------------------------------------
# 규칙 검사
# ---------------------------------------------------------------------------

class TestChecker:
    def test_weakened_assignment(self):
        report = check_text(proof("(node Weaken (triple (= x 1) (nt S) (= x 0)) (node Assign (node Zero)))"))
        assert report.overall is Overall.VERIFIED
        assert report.summary() == "Verified (3 nodes, 0 trusted)"
        assert [n.path for n in report.nodes] == ['0.0.0', '0.0', '0']

    def test_wrong_weakening_has_countermodel(self):
        report = check_text(proof("(node Weaken (triple (= x 1) (nt S) (= x 1)) (node Assign (node Zero)))"))
        assert report.overall is Overall.REJECTED
        root = report.nodes[-1]
        assert root.status is NodeStatus.OBLIGATION_FAILED
        assert isinstance(root.obligations[0].verdict, Invalid)

    def test_rule_must_match_production(self):
        report = check_text(proof("(node One (triple (= x 1) (nt Z) _))"))
        assert report.nodes[0].status is NodeStatus.RULE_SHAPE_ERROR
        assert "does not match production" in report.nodes[0].detail
        assert report.summary() == "Rejected (1 failing nodes)"

    def test_premise_count(self):
        report = check_text(proof("(node Assign (triple (= x 1) (nt S) _))"))
        assert "expects 1 premise(s), got 0" in report.nodes[0].detail

    def test_invariant_over_unused_variable(self):
        report = check_text(proof("(node Inv (triple (= y 3) (nt S) _))"))
        assert report.overall is Overall.VERIFIED
        assert report.root.post == parse_predicate("(= y 3)")

    def test_invariant_rejects_assigned_variable(self):
        report = check_text(proof("(node Inv (triple (= x 3) (nt S) _))"))
        assert "variable x of the invariant occurs in" in report.nodes[0].detail

    def test_hypothesis_must_be_in_context(self):
        report = check_text(proof("(node ApplyHP (triple (= x 1) (nt S) (= x 0)))"))
        assert "hypothesis not in context" in report.nodes[0].detail

    def test_written_post_must_match_template(self):
        report = check_text(proof("(node Assign (triple (= x 1) (nt S) (= x 0)) (node Zero))"))
        assert report.nodes[-1].status is NodeStatus.RULE_SHAPE_ERROR
        assert "postcondition does not match" in report.nodes[-1].detail

    def test_failed_premise_rejects_parent(self):
        report = check_text(proof("(node Assign (triple (= x 1) (nt S) _) (node One))"))
        assert [n.status for n in report.nodes] == [NodeStatus.RULE_SHAPE_ERROR] * 2
        assert "premise 0.0 was rejected" in report.nodes[-1].detail

    def test_conjunction_of_two_premises(self):
        report = check_text(proof(
            "(node Conj (triple (= y 3) (nt S) _)"
            " (node Inv)"
            " (node Weaken (triple _ _ (= x 0)) (node Assign (node Zero))))"))
        assert report.summary() == "Verified (5 nodes, 0 trusted)"
        post = report.root.post
        assert eval_predicate(post, VectorState.single(x=0, y=3))
        assert not eval_predicate(post, VectorState.single(x=0, y=4))

    def test_rename_pre_and_post(self):
        report = check_text(proof(
            "(node Sub1 (triple _ (nt S) _) (ann rename (y w)) (node Inv (triple (= y 3) (nt S) _)))"))
        assert report.overall is Overall.VERIFIED
        assert report.root.pre == parse_predicate("(= w 3)")
        assert report.root.post == parse_predicate("(= w 3)")

    def test_rename_refuses_program_variable(self):
        report = check_text(proof(
            "(node Sub1 (triple _ (nt S) _) (ann rename (y x)) (node Inv (triple (= y 3) (nt S) _)))"))
        assert "variable x occurs in" in report.nodes[-1].detail

    def test_rename_pre_only(self):
        report = check_text(proof(
            "(node Sub2 (triple _ (nt S) _) (ann rename (y w))"
            " (node Weaken (triple (= y 3) (nt S) (= x 0)) (node Assign (node Zero))))"))
        assert report.overall is Overall.VERIFIED
        assert report.root.pre == parse_predicate("(= w 3)")
        assert report.root.post == parse_predicate("(= x 0)")

    def test_rename_pre_only_needs_post_free_of_name(self):
        report = check_text(proof(
            "(node Sub2 (triple _ (nt S) _) (ann rename (y w)) (node Inv (triple (= y 3) (nt S) _)))"))
        assert "or in the postcondition" in report.nodes[-1].detail

    def test_check_proof_matches_document_check(self):
        doc = parse_proof(proof("(node Weaken (triple (= x 1) (nt S) (= x 0)) (node Assign (node Zero)))"))
        oracle = EntailmentOracle(SolverBridge('none'), width=doc.width)
        assert check_proof(doc.root, doc.grammar, oracle) == check_document(doc, oracle)

    def test_hypothesis_is_not_usable_directly_under_induction(self):
        # Weaken 아래로 가설을 자기 생성 규칙에 그대로 되돌려 쓰는 증명
        exploit = "(node Weaken (node ApplyHP (triple _ (nt S2) _)))"
        report = check_text(f"""
            (proof
              (grammar (start S2) (nt S2 stmt ((assign x (+ x (lit 2)))) ((seq S2 S2))))
              (width 1)
              (node HP (triple (mod= x 0 2) (nt S2) (mod= x 1 2)) {exploit} {exploit}))""")
        assert report.overall is Overall.REJECTED
        assert any("only usable below an expression or statement rule" in n.detail for n in report.nodes)

    def test_single_production_hypothesis_needs_the_nonterminal(self):
        body = "(node HP (triple (true) (nt S) (= x 1)) (node ApplyHP))"
        report = check_text(f"(proof (grammar (start S) (nt S stmt ((assign x (lit 0))))) (width 1) {body})")
        assert report.overall is Overall.REJECTED
        assert "ApplyHP needs a nonterminal subject" in report.nodes[0].detail

    def test_rejected_induction_concludes_nothing(self):
        doc = parse_proof("""
            (proof
              (problem (grammar (start S) (nt S stmt ((assign x (lit 0)))))
                       (input (true)) (output (= x 0)) (width 1))
              (node HP (triple (true) (nt S) (= x 1)) (node ApplyHP)))""")
        oracle = EntailmentOracle(SolverBridge('none'), width=doc.width)
        report = check_document(doc, oracle)
        verdict = conclude_unrealizability(doc.problem, report, report.root, oracle)
        assert verdict == Inconclusive("proof was rejected")


# ---------------------------------------------------------------------------
# 증명 변형: 모양이 깨진 증명은 거부되고, 받아들여진 증명은 반례가 없다
# ---------------------------------------------------------------------------

STEPS_GRAMMAR = """
(grammar (start S)
  (nt S stmt ((assign x (+ x (lit 2)))) ((seq T S)))
  (nt T stmt ((assign x (+ x (lit 2))))))
"""

ADD_TWO = "(node Assign (node Plus (node Var) (node Plus (node One) (node One))))"
PARITY_SLOTS = {
    'pre': "(mod= x 0 2)",
    'post': "(mod= x 0 2)",
    'base': f"(node Weaken {ADD_TWO})",
    'head': f"(node Weaken (triple _ (nt T) (mod= x 0 2)) {ADD_TWO})",
    'tail': "(node ApplyHP)",
    'wrap': None,
}
PREDICATES = ["(mod= x 0 2)", "(mod= x 1 2)", "(true)", "(<= 0 x)", "(= x 0)", "(< x 100)"]
ALTERNATIVES = {
    'pre': PREDICATES,
    'post': PREDICATES,
    'base': [
        "(node Weaken (node ApplyHP (triple _ (nt S) _)))",
        "(node ApplyHP)",
        "(node Inv)",
        f"(node Weaken (triple _ _ (mod= x 1 2)) {ADD_TWO})",
    ],
    'head': [
        "(node Weaken (triple _ (nt T) _) (node ApplyHP (triple _ (nt S) _)))",
        "(node ApplyHP)",
        f"(node Weaken (triple _ (nt T) (mod= x 1 2)) {ADD_TWO})",
        f"(node Weaken (triple _ (nt T) (<= 0 x)) {ADD_TWO})",
    ],
    'tail': [
        "(node Weaken (node ApplyHP))",
        "(node Weaken (triple _ (nt S) (<= 0 x)) (node ApplyHP))",
        "(node Weaken (node ApplyHP (triple _ (nt S) _)))",
        f"(node Weaken {ADD_TWO})",
    ],
    'wrap': [
        ("(= x 0)", "(mod= x 0 2)"),
        ("(= x 2)", "(<= 0 x)"),
        ("(mod= x 0 2)", "(mod= x 1 2)"),
        ("(true)", "(true)"),
        ("(mod= x 1 2)", "(mod= x 1 2)"),
    ],
}


def parity_proof(**changes) -> str:
    s = {**PARITY_SLOTS, **changes}
    body = (f"(node HP (triple {s['pre']} (nt S) {s['post']}) {s['base']}"
            f" (node Seq {s['head']} {s['tail']}))")
    if s['wrap'] is not None:
        pre, post = s['wrap']
        body = f"(node Weaken (triple {pre} (nt S) {post}) {body})"
    return f"(proof {STEPS_GRAMMAR} (width 1) {body})"


def _mutate(rng) -> dict:
    slots = list(ALTERNATIVES)
    changes = {}
    for _ in range(1 + int(rng.integers(2))):
        slot = slots[int(rng.integers(len(slots)))]
        options = ALTERNATIVES[slot]
        changes[slot] = options[int(rng.integers(len(options)))]
    return changes


class TestProofMutation:
    def test_parity_proof_is_accepted(self):
        report = check_text(parity_proof())
        assert report.summary() == "Verified (17 nodes, 0 trusted)"

    @pytest.mark.parametrize("changes, message", [
        ({'base': "(node Weaken (node Assign (node Minus (node Var) (node Plus (node One) (node One)))))"},
         "does not match production"),
        ({'head': f"(node Weaken (triple _ (nt T) (mod= x 0 2)) (node Seq {ADD_TWO} (node ApplyHP)))"},
         "does not match production"),
        ({'base': "(node Weaken (node Assign (triple _ _ (and (mod= x 0 2) (= e_t 0)))"
                  " (node Plus (node Var) (node Plus (node One) (node One)))))"},
         "postcondition does not match"),
        ({'tail': "(node ApplyHP (triple (mod= x 0 2) (nt T) (mod= x 0 2)))"}, "does not match the expected"),
    ])
    def test_shape_mutation_is_rejected(self, changes, message):
        report = check_text(parity_proof(**changes))
        assert report.overall is Overall.REJECTED
        assert any(n.status is NodeStatus.RULE_SHAPE_ERROR and message in n.detail for n in report.nodes)

    @pytest.mark.parametrize("body, message", [
        (f"(node HP (triple (mod= x 0 2) (nt S) (mod= x 0 2)) (node Weaken {ADD_TWO}))", "missing production"),
        (f"(node HP (triple (mod= x 0 2) (nt S) (mod= x 0 2)) (node Weaken {ADD_TWO})"
         f" (node Seq (node Weaken (triple _ (nt T) (mod= x 0 2)) {ADD_TWO}) (node ApplyHP))"
         f" (node ApplyHP))", "has only 2 production(s), got 3 premises"),
        (f"(node HP (triple (mod= x 0 2) (nt S) (mod= x 0 2))"
         f" (node Seq (node Weaken (triple _ (nt T) (mod= x 0 2)) {ADD_TWO}) (node ApplyHP))"
         f" (node Weaken {ADD_TWO}))", "does not match production"),
    ])
    def test_induction_premises_follow_productions(self, body, message):
        report = check_text(f"(proof {STEPS_GRAMMAR} (width 1) {body})")
        assert report.overall is Overall.REJECTED
        assert any(message in n.detail for n in report.nodes)

    def test_accepted_mutations_have_no_counterexample(self):
        rng = make_rng(7)
        grammar = parse_grammar(STEPS_GRAMMAR)
        accepted = 0
        for k in range(200):
            text = parity_proof(**_mutate(rng))
            report = check_text(text)
            if report.overall is not Overall.VERIFIED:
                continue
            accepted += 1
            root = report.root
            assert root.subject == 'S'
            result = falsify_triple(root.pre, 'S', root.post, grammar, depth=5, fuel=Fuel(64),
                                    samples=200, rng=make_rng(k))
            assert isinstance(result, NoneFound), f"{text}\n{result}"
        assert accepted > 0


class TestReport:
    def test_text_and_json(self):
        report = check_text(proof("(node Weaken (triple (= x 1) (nt S) (= x 0)) (node Assign (node Zero)))"))
        text = render_report(report, 'text', 'Unrealizable')
        assert text.splitlines()[0] == report.summary()
        assert text.splitlines()[-1] == "Conclusion: Unrealizable"
        data = json.loads(render_report(report, 'json'))
        assert data['status'] == 'Verified'
        assert report_from_json(data) == report

    def test_unknown_format(self):
        report = check_text(proof("(node Inv (triple (= y 3) (nt S) _))"))
        with pytest.raises(ValueError, match="unknown report format"):
            render_report(report, 'xml')


# ---------------------------------------------------------------------------
# golden 증명
# ---------------------------------------------------------------------------

class TestGolden:
    def test_parity_induction(self, golden):
        doc, _, report = check_file(golden('mod6_steps_even.ulp'))
        assert doc.problem is None
        assert report.summary() == "Verified (11 nodes, 0 trusted)"

    @pytest.mark.parametrize("name", [
        'mod6_steps_start.ulp', 'sy_sum.ulp', 'ite_small_const_symbolic.ulp', 'const_two_examples.ulp',
    ])
    def test_unrealizable(self, golden, name):
        doc, oracle, report = check_file(golden(name))
        assert report.overall is Overall.VERIFIED, render_report(report)
        verdict = conclude_unrealizability(doc.problem, report, report.root, oracle)
        assert isinstance(verdict, Unrealizable), str(verdict)

    def test_wrong_target_is_rejected(self, golden):
        doc, oracle, report = check_file(golden('mod6_steps_start_bad.ulp'))
        assert report.overall is Overall.REJECTED
        assert any(isinstance(ob.verdict, Invalid) for _, ob in report.obligations)
        verdict = conclude_unrealizability(doc.problem, report, report.root, oracle)
        assert verdict == Inconclusive("proof was rejected")

    def test_valid_triple_that_proves_nothing(self, golden):
        doc, oracle, report = check_file(golden('const_aux.ulp'))
        assert report.overall is Overall.VERIFIED
        verdict = conclude_unrealizability(doc.problem, report, report.root, oracle)
        assert isinstance(verdict, Inconclusive)
        assert verdict.reason.startswith("output obligation")

    def test_conclusion_needs_start_subject(self, golden):
        doc, oracle, report = check_file(golden('mod6_steps_even.ulp'))
        problem = load_problem(golden('mod6_steps.ulg'))
        with pytest.raises(ConclusionError, match="not the start nonterminal"):
            conclude_unrealizability(problem, report, report.root, oracle)

    def test_infinite_examples_structure(self, golden):
        _, _, report = check_file(golden('ite_identity_infinite.ulp'))
        assert not any(n.status is NodeStatus.RULE_SHAPE_ERROR for n in report.nodes)
        assert report.trusted == ('fin-mix', 'fin-neg')
        assert not any(isinstance(ob.verdict, Invalid) for _, ob in report.obligations)

    @requires_solver
    def test_infinite_examples_with_solver(self, golden):
        _, _, report = check_file(golden('ite_identity_infinite.ulp'), backend='z3')
        assert report.summary() == "VerifiedWithTrust (2 lemmas: fin-mix, fin-neg)"
