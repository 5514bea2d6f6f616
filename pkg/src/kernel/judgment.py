"""
판단(judgment) 모듈
Γ ⊢ {|P|} S {|Q|} 에서 주어 S는 비단말 이름(인라인 포함) 또는 생성 규칙이다
"""
from dataclasses import dataclass, replace
from typing import FrozenSet, Optional, Tuple, Union

from src.core.grammar import (
    Grammar, Production, render_production, render_rhs, vars_of_nonterminal,
)
from src.core.terms import RESERVED_BOOL, RESERVED_INT, SKIP_VAR
from src.assertions.normalize import alpha_equivalent, canonicalize
from src.assertions.parser import render_predicate

Subject = Union[str, Production]


@dataclass(frozen=True)
class Triple:
    """
    가설 또는 결론 삼중쌍 {|pre|} subject {|post|}

    guarded가 True인 가설은 HP가 막 추가한 것으로, 식/문장 규칙 아래에서만 쓸 수 있다
    """
    pre: object
    subject: Subject
    post: object
    guarded: bool = False


@dataclass(frozen=True)
class Judgment:
    """
    검사된 판단

    Attributes:
        context: 가설 Γ (HP가 추가한 순서)
        pre: 사전조건
        subject: 주어
        post: 사후조건
    """
    context: Tuple[Triple, ...]
    pre: object
    subject: Subject
    post: object

    @property
    def triple(self) -> Triple:
        return Triple(self.pre, self.subject, self.post)


def same_predicate(a, b) -> bool:
    """정규화 후 α-동치 (새 이름 전단사, 논리곱/논리합 교환 허용)"""
    if a is b or a == b:
        return True
    return alpha_equivalent(canonicalize(a), canonicalize(b))


def subject_production(g: Grammar, s: Subject) -> Optional[Production]:
    """
    규칙 검사에 쓸 생성 규칙
    비체인 생성 규칙 하나뿐인 비단말은 그 규칙으로 본다

    Args:
        g: 문법
        s: 주어

    Returns:
        Production 또는 None
    """
    if isinstance(s, Production):
        if s.rhs.is_chain and s.rhs.args[0] != s.lhs:
            return subject_production(g, s.rhs.args[0])
        return s
    prods = g.productions_of(s)
    if len(prods) == 1 and not prods[0].rhs.is_chain:
        return prods[0]
    return None


def subject_vars(g: Grammar, s: Subject) -> FrozenSet[str]:
    """vars(S): 주어의 프로그램이 읽거나 쓰는 변수 ∪ {e_t, b_t}"""
    if not isinstance(s, Production):
        return vars_of_nonterminal(g, s)
    names = {RESERVED_INT, RESERVED_BOOL}
    if s.rhs.name and s.rhs.name != SKIP_VAR:
        names.add(s.rhs.name)
    for child in s.rhs.args:
        if g.is_declared(child):
            names |= vars_of_nonterminal(g, child)
    return frozenset(names)


def language_key(g: Grammar, s: Subject, _seen: FrozenSet[str] = frozenset()) -> str:
    """
    같은 언어를 뜻하는 주어는 같은 키를 갖는다
    (인라인 비단말 = 그 우변, 단일 생성 규칙 비단말 = 그 규칙, 체인 규칙 = 대상 비단말)

    Args:
        g: 문법
        s: 주어

    Returns:
        비교용 문자열
    """
    if isinstance(s, Production):
        if s.rhs.is_chain and s.rhs.args[0] not in _seen:
            return language_key(g, s.rhs.args[0], _seen | {s.lhs})
        return f"(rhs {render_rhs(g, s.rhs)})"
    prods = g.productions_of(s)
    if len(prods) == 1 and s not in _seen:
        return language_key(g, prods[0], _seen | {s})
    return f"(nt {s})"


def same_subject(g: Grammar, a: Subject, b: Subject) -> bool:
    if a == b:
        return True
    return language_key(g, a) == language_key(g, b)


def render_subject(g: Grammar, s: Subject) -> str:
    """증명 파일 표기: (nt N) 또는 (rhs <우변>)"""
    if isinstance(s, Production):
        return f"(rhs {render_rhs(g, s.rhs)})"
    if g.is_inline(s):
        return f"(rhs {render_rhs(g, g.productions_of(s)[0].rhs)})"
    return f"(nt {s})"


def describe_subject(g: Grammar, s: Subject) -> str:
    """진단용 표기 (생성 규칙이면 'N ::= rhs')"""
    if isinstance(s, Production):
        return render_production(g, s)
    return render_subject(g, s)


def render_triple(g: Grammar, t: Union[Triple, Judgment]) -> str:
    return f"{{| {render_predicate(t.pre)} |}} {render_subject(g, t.subject)} {{| {render_predicate(t.post)} |}}"


def triples_match(g: Grammar, a: Triple, b: Triple) -> bool:
    """주어가 같고 사전/사후조건이 α-동치"""
    return (same_subject(g, a.subject, b.subject)
            and same_predicate(a.pre, b.pre)
            and same_predicate(a.post, b.post))


def covered_productions(g: Grammar, n: str, s: Subject) -> Optional[Tuple[int, ...]]:
    """
    주어 s가 비단말 n의 생성 규칙 중 어느 것들을 덮는지 계산

    s는 n의 생성 규칙, n의 체인 대상, 또는 생성 규칙이 모두 n의 생성 규칙인 비단말이어야 한다

    Args:
        g: 문법
        n: 비단말
        s: 주어

    Returns:
        덮는 생성 규칙 인덱스 튜플 (해당 없으면 None)
    """
    prods = g.productions_of(n)
    keys = [language_key(g, p) for p in prods]
    key = language_key(g, s)
    if key in keys:
        return (keys.index(key),)
    if isinstance(s, Production):
        return None
    for j, p in enumerate(prods):
        if p.rhs.is_chain and p.rhs.args[0] == s:
            return (j,)
    found = []
    for p in g.productions_of(s):
        k = language_key(g, p)
        if k not in keys:
            return None
        found.append(keys.index(k))
    return tuple(found) if found else None


def subject_within(g: Grammar, inner: Subject, outer: Subject) -> bool:
    """
    Weaken의 N₁ ⊆ N 구문 검사

    Args:
        g: 문법
        inner: 결론 주어 N₁
        outer: 전제 주어 N

    Returns:
        같은 주어, N의 생성 규칙, N의 체인 대상, 또는 생성 규칙이 모두 N의 것인 비단말이면 True
    """
    if same_subject(g, inner, outer):
        return True
    if isinstance(outer, Production):
        if outer.rhs.is_chain:
            return subject_within(g, inner, outer.rhs.args[0])
        return False
    return covered_productions(g, outer, inner) is not None


def release_hypotheses(ctx: Tuple[Triple, ...]) -> Tuple[Triple, ...]:
    """식/문장 규칙의 전제로 내려갈 때 보호된 가설을 풀어 준다"""
    if not any(t.guarded for t in ctx):
        return ctx
    return tuple(replace(t, guarded=False) for t in ctx)
