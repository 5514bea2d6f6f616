"""
presburger 패키지 테스트: 선형식 정규화, 쿠퍼 한정자 제거, 모델 탐색
"""
import numpy as np
import pytest

from src.presburger import formula as pf
from src.presburger.cooper import CooperEngine, eliminate, find_model, is_valid
from src.presburger.formula import INT, Lin
from src.utils.seed import make_rng


def x(c=1):
    return Lin.var('x', c)


def y(c=1):
    return Lin.var('y', c)


class TestSmartConstructors:
    def test_constant_folding(self):
        assert pf.lt(Lin.constant(-1)) == pf.TRUE
        assert pf.eq(Lin.constant(3)) == pf.FALSE

    def test_gcd_reduction(self):
        assert pf.eq(x(2) + Lin.constant(1)) == pf.FALSE
        assert pf.eq(x(4) - Lin.constant(6)) == pf.FALSE
        assert pf.eq(x(2) - Lin.constant(6)) == pf.eq(x() - Lin.constant(3))

    def test_divisibility_trivial_cases(self):
        assert pf.dvd(1, x()) == pf.TRUE
        assert pf.dvd(2, x(2)) == pf.TRUE


class TestNnf:
    @pytest.mark.parametrize("atom", [
        pf.lt(x()),
        pf.eq(x() - Lin.constant(1)),
        pf.dvd(3, x()),
    ])
    def test_negation_reaches_literals(self, atom):
        out = pf.nnf(pf.Not(atom))
        assert not isinstance(out, pf.Not)
        for value in range(-4, 5):
            assert pf.evaluate(out, {'x': value}) == (not pf.evaluate(atom, {'x': value}))

    def test_de_morgan(self):
        f = pf.Not(pf.and_(pf.lt(x()), pf.lt(y())))
        out = pf.nnf(f)
        assert isinstance(out, pf.Or)
        assert pf.evaluate(out, {'x': -1, 'y': 0})
        assert not pf.evaluate(out, {'x': -1, 'y': -1})


class TestCooper:
    def test_parity_is_exhaustive(self):
        even = pf.dvd(2, x())
        odd = pf.dvd(2, x() + Lin.constant(1))
        assert is_valid(pf.forall([('x', INT)], pf.or_(even, odd)))
        assert not is_valid(pf.forall([('x', INT)], even))

    def test_no_integer_between(self):
        # 2y = x ∧ x = 2z + 1 은 정수해가 없다
        f = pf.exists([('x', INT), ('y', INT), ('z', INT)],
                      pf.and_(pf.eq2(y(2), x()), pf.eq2(x(), Lin.var('z', 2) + Lin.constant(1))))
        assert eliminate(f) == pf.FALSE

    def test_bounded_interval(self):
        f = pf.exists([('x', INT)], pf.and_(pf.lt2(Lin.constant(3), x(2)), pf.lt2(x(2), Lin.constant(6))))
        assert eliminate(f) == pf.TRUE

    def test_projection_keeps_free_variable(self):
        f = pf.exists([('x', INT)], pf.eq2(y(), x(3)))
        qf = eliminate(f)
        for value in range(-6, 7):
            assert pf.evaluate(qf, {'y': value}) == (value % 3 == 0)

    def test_model_satisfies_formula(self):
        f = pf.and_(pf.lt2(x(), y()), pf.dvd(5, x() + y()), pf.lt2(Lin.constant(10), y()))
        model = find_model(f)
        assert model is not None
        assert pf.evaluate(f, model)

    def test_unsatisfiable_has_no_model(self):
        assert find_model(pf.and_(pf.lt2(x(), y()), pf.lt2(y(), x()))) is None

    def test_dnf_limit_is_respected(self):
        engine = CooperEngine(max_dnf=1)
        f = pf.exists([('x', INT)], pf.and_(pf.or_(pf.eq(x()), pf.eq(x() - Lin.constant(1))),
                                            pf.or_(pf.eq(y()), pf.eq(y() - x()))))
        assert engine.is_satisfiable(f)


@pytest.mark.parametrize("seed", range(5))
def test_random_elimination_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        a, b, c = (int(v) for v in rng.integers(-3, 4, size=3))
        d = int(rng.integers(2, 4))
        body = pf.and_(pf.lt2(x(a) + y(), Lin.constant(c)), pf.dvd(d, x() + y(b)))
        qf = eliminate(pf.exists([('x', INT)], body))
        for yv in range(-5, 6):
            brute = any(pf.evaluate(body, {'x': xv, 'y': yv}) for xv in range(-60, 61))
            assert pf.evaluate(qf, {'y': yv}) == brute


def _random_atom(rng):
    a = int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1)
    b = int(rng.integers(-3, 4))
    c = int(rng.integers(-5, 6))
    lin = x(a) + y(b)
    kind = int(rng.integers(3))
    if kind == 0:
        return pf.lt2(lin, Lin.constant(c))
    if kind == 1:
        return pf.eq2(lin, Lin.constant(c))
    return pf.dvd(int(rng.integers(2, 5)), lin + Lin.constant(c))


def _random_formula(rng):
    """원자 2~4개를 and/or/not으로 묶은 임의의 식"""
    parts = [_random_atom(rng) for _ in range(int(rng.integers(2, 5)))]
    while len(parts) > 1:
        a, b = parts.pop(), parts.pop()
        joined = pf.and_(a, b) if rng.random() < 0.5 else pf.or_(a, b)
        parts.insert(int(rng.integers(len(parts) + 1)), pf.not_(joined) if rng.random() < 0.25 else joined)
    return parts[0]


@pytest.mark.parametrize("seed", range(10))
def test_random_quantifier_elimination_at_scale(seed):
    rng = make_rng(100 + seed)
    for _ in range(100):
        body = _random_formula(rng)
        universal = rng.random() < 0.5
        quantified = (pf.forall if universal else pf.exists)([('x', INT)], body)
        qf = eliminate(quantified)
        combine = all if universal else any
        for yv in range(-5, 6):
            brute = combine(pf.evaluate(body, {'x': xv, 'y': yv}) for xv in range(-40, 41))
            assert pf.evaluate(qf, {'y': yv}) == brute, f"{quantified} at y={yv}"
