"""
규칙 템플릿 모듈
식/문장 규칙의 결론 사후조건과 전제 사전조건을 그대로 구성한다.
유령(ghost) 벡터 복사본 이름은 호출자가 세션에서 받아 넘긴다
"""
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from src.core.terms import Op, RESERVED_BOOL, RESERVED_INT
from src.assertions.predicate import (
    DEFAULT_INDEX, Add, And, BIdx, Div, Eq, ExistsVec, ForallIdx, Idx, Iff, Lit, Lt, Mul, Not,
    Sub, free_vars, is_bool_name, vec_eq,
)
from src.assertions.substitution import conditional_substitute, substitute_vectors

I = DEFAULT_INDEX

NULLARY_OPS = (Op.ZERO, Op.ONE, Op.VAR, Op.TRUE, Op.FALSE)
ARITH_OPS = {Op.PLUS: Add, Op.MINUS: Sub, Op.MULT: Mul, Op.DIV: Div}
COMPARE_OPS = {Op.LT: Lt, Op.EQ: Eq}


def ghost_vectors(pre, program_vars: Iterable[str], extra: Iterable[str] = ()) -> Tuple[str, ...]:
    """
    유령 복사 대상 벡터 v⃗ = P의 자유 벡터 ∪ vars(S) ∪ {e_t, b_t} (정렬)

    Args:
        pre: 사전조건
        program_vars: 주어의 변수
        extra: 추가로 포함할 이름

    Returns:
        정렬된 벡터 이름 튜플
    """
    names = set(free_vars(pre).vectors) | set(program_vars) | set(extra)
    names |= {RESERVED_INT, RESERVED_BOOL}
    return tuple(sorted(names))


def ghost_equal(copy: Mapping[str, str], order: Sequence[str]):
    """v⃗₁ = v⃗ : 벡터마다 ∀i. copy[i] = v[i]"""
    return And(tuple(vec_eq(copy[v], v, is_bool_name(v)) for v in order))


def copies_equal(left: Mapping[str, str], right: Mapping[str, str], order: Sequence[str]):
    """v⃗₁ = v⃗₂"""
    return And(tuple(vec_eq(left[v], right[v], is_bool_name(v)) for v in order))


def extended_pre(pre, copy: Mapping[str, str], order: Sequence[str]):
    """유령 확장 사전조건 P ∧ (v⃗₁ = v⃗)"""
    return And((pre, ghost_equal(copy, order)))


def _assigned(target: str, value):
    """∀i. target[i] = value(i) (불리언 대상이면 ⟺)"""
    if target == RESERVED_BOOL:
        return ForallIdx(I, Iff(BIdx(target, I), value))
    return ForallIdx(I, Eq(Idx(target, I), value))


def nullary_value(op: Op, name: Optional[str] = None):
    """0항 연산자의 결과 값 (i번째 칸)"""
    if op is Op.ZERO:
        return Lit(0)
    if op is Op.ONE:
        return Lit(1)
    if op is Op.VAR:
        return Idx(name, I)
    raise ValueError(f"not an integer constant rule: {op.keyword}")


def post_nullary(op: Op, pre, shifted: str, name: Optional[str] = None):
    """
    Zero/One/Var/True/False: ∃t′. P[t′/t] ∧ t = 값

    Args:
        op: 연산자
        pre: 사전조건 P
        shifted: e_t(또는 b_t)의 새 복사본 이름
        name: Var의 변수 이름

    Returns:
        템플릿 사후조건
    """
    if op in (Op.TRUE, Op.FALSE):
        moved = substitute_vectors(pre, {RESERVED_BOOL: shifted})
        atom = BIdx(RESERVED_BOOL, I)
        value = ForallIdx(I, atom if op is Op.TRUE else Not(atom))
        return ExistsVec((shifted,), And((moved, value)))
    moved = substitute_vectors(pre, {RESERVED_INT: shifted})
    return ExistsVec((shifted,), And((moved, _assigned(RESERVED_INT, nullary_value(op, name)))))


def post_not(premise_post, shifted: str):
    """Not: ∃b_t′. Q[b_t′/b_t] ∧ b_t = ¬b_t′"""
    moved = substitute_vectors(premise_post, {RESERVED_BOOL: shifted})
    return ExistsVec((shifted,), And((moved, _assigned(RESERVED_BOOL, Not(BIdx(shifted, I))))))


def _binary_result(op: Op, left: Mapping[str, str], right: Mapping[str, str]):
    if op in ARITH_OPS:
        value = ARITH_OPS[op](Idx(left[RESERVED_INT], I), Idx(right[RESERVED_INT], I))
        return _assigned(RESERVED_INT, value)
    if op in COMPARE_OPS:
        value = COMPARE_OPS[op](Idx(left[RESERVED_INT], I), Idx(right[RESERVED_INT], I))
        return _assigned(RESERVED_BOOL, value)
    if op is Op.AND:
        return _assigned(RESERVED_BOOL, And((BIdx(left[RESERVED_BOOL], I), BIdx(right[RESERVED_BOOL], I))))
    raise ValueError(f"not a binary expression rule: {op.keyword}")


def post_binary(op: Op, pre, q1, q2, order: Sequence[str], v1: Dict[str, str], v2: Dict[str, str],
                v1p: Dict[str, str], v2p: Dict[str, str], shifted: str):
    """
    Bin/Comp/And 템플릿

        ∃t′, v⃗₁, v⃗₂, v⃗₁′, v⃗₂′. (P ∧ Q₁[v⃗₁′/v⃗] ∧ Q₂[v⃗₂′/v⃗] ∧ v⃗₁ = v⃗ ∧ v⃗₂ = v⃗)[t′/t]
                                ∧ t = t₁′ ⊕ t₂′

    t는 산술이면 e_t, 비교/논리곱이면 b_t이다.

    Args:
        op: 연산자
        pre: 결론 사전조건 P
        q1, q2: 두 전제의 사후조건
        order: 유령 벡터 v⃗
        v1, v2: 전제 사전조건의 유령 복사본
        v1p, v2p: 전제 사후조건을 옮길 복사본
        shifted: t의 새 복사본 이름

    Returns:
        템플릿 사후조건
    """
    target = RESERVED_INT if op in ARITH_OPS else RESERVED_BOOL
    body = And((pre,
                substitute_vectors(q1, {v: v1p[v] for v in order}),
                substitute_vectors(q2, {v: v2p[v] for v in order}),
                ghost_equal(v1, order),
                ghost_equal(v2, order)))
    moved = substitute_vectors(body, {target: shifted})
    names = (shifted,) + tuple(v1[v] for v in order) + tuple(v2[v] for v in order) \
        + tuple(v1p[v] for v in order) + tuple(v2p[v] for v in order)
    return ExistsVec(names, And((moved, _binary_result(op, v1p, v2p))))


def post_assign(name: str, premise_post, shifted: str):
    """Assign: ∃x⃗′. Q[x⃗′/x⃗] ∧ x⃗ = e⃗_t"""
    moved = substitute_vectors(premise_post, {name: shifted})
    return ExistsVec((shifted,), And((moved, vec_eq(name, RESERVED_INT))))


def _project(q, order: Sequence[str], fresh: Mapping[str, str], guard: str, polarity: bool):
    for v in order:
        q = conditional_substitute(q, v, fresh[v], guard, polarity)
    return q


def post_ite(q1, q2, order: Sequence[str], v1: Dict[str, str], v2: Dict[str, str],
             v1p: Dict[str, str], v2p: Dict[str, str]):
    """
    ITE 템플릿

        ∃v⃗₁, v⃗₂, v⃗₁′, v⃗₂′. Q₁[v⃗₁′[i]/v⃗[i] where b⃗_t₁[i] = false]
                           ∧ Q₂[v⃗₂′[i]/v⃗[i] where b⃗_t₂[i] = true] ∧ v⃗₁ = v⃗₂

    Args:
        q1, q2: then/else 전제의 사후조건
        order: 유령 벡터 v⃗
        v1, v2: 전제 사전조건의 유령 복사본 (b_t₁, b_t₂가 가드)
        v1p, v2p: 잘못된 가지를 옮길 복사본

    Returns:
        템플릿 사후조건
    """
    kept1 = _project(q1, order, v1p, v1[RESERVED_BOOL], True)
    kept2 = _project(q2, order, v2p, v2[RESERVED_BOOL], False)
    names = tuple(v1[v] for v in order) + tuple(v2[v] for v in order) \
        + tuple(v1p[v] for v in order) + tuple(v2p[v] for v in order)
    return ExistsVec(names, And((kept1, kept2, copies_equal(v1, v2, order))))


def while_body_pre(invariant_b, b_loop: str):
    """While 두 번째 전제의 사전조건 I_B ∧ b⃗_loop = b⃗_t"""
    return And((invariant_b, vec_eq(b_loop, RESERVED_BOOL, True)))


def post_while(invariant_b):
    """While 결론 사후조건 I_B ∧ b⃗_t = f⃗"""
    return And((invariant_b, ForallIdx(I, Not(BIdx(RESERVED_BOOL, I)))))


def while_order(invariant_b, invariant_body, program_vars: Iterable[str], b_loop: str) -> Tuple[str, ...]:
    """While 부수 조건의 v⃗ (e_t, b_t, b_loop 제외)"""
    names = set(free_vars(invariant_b).vectors) | set(free_vars(invariant_body).vectors) | set(program_vars)
    return tuple(sorted(names - {RESERVED_INT, RESERVED_BOOL, b_loop}))


def while_side_condition(invariant_b, invariant_body, order: Sequence[str], b_loop: str,
                         v1: Dict[str, str], v2: Dict[str, str]):
    """
    While 부수 조건 (가정, 결론) 쌍

        ∃v⃗₁, e_t, b_t. I_B′[v⃗₁[i]/v⃗[i] where b_loop[i] = false]
            ⟹ ∃v⃗₂, e_t, b_t. I_B[v⃗₂[i]/v⃗[i] where b_loop[i] = false]

    Returns:
        (hyp, concl)
    """
    hyp = ExistsVec(tuple(v1[v] for v in order) + (RESERVED_INT, RESERVED_BOOL),
                    _project(invariant_body, order, v1, b_loop, True))
    concl = ExistsVec(tuple(v2[v] for v in order) + (RESERVED_INT, RESERVED_BOOL),
                      _project(invariant_b, order, v2, b_loop, True))
    return hyp, concl
