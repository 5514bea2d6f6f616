"""
타입이 있는 정규 트리 문법(RTG) 모듈
생성 규칙의 우변은 연산자 하나와 비단말 자식들로 이루어진 골격(skeleton)이며,
우변 안에 직접 쓴 단말 부분식은 파싱 시 '#inl<k>' 비단말로 분리된다
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.core.sexpr import (
    QuotedString, Symbol, head, parse_sexpr, position, render_sexpr,
)
from src.core.terms import (
    Op, Sort, Term, RESERVED_BOOL, RESERVED_INT, SKIP_VAR,
)

logger = logging.getLogger(__name__)

INLINE_PREFIX = '#inl'


class GrammarError(ValueError):
    """문법 구조 오류 (중복 비단말, 알 수 없는 연산자, 타입 불일치)"""


@dataclass(frozen=True)
class RhsSkeleton:
    """생성 규칙 우변: op가 None이면 체인 규칙(자식 하나)"""
    op: Optional[Op]
    args: Tuple[str, ...] = ()
    name: Optional[str] = None

    @property
    def is_chain(self) -> bool:
        return self.op is None


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: RhsSkeleton


@dataclass(frozen=True)
class Nonterminal:
    name: str
    sort: Sort
    inline: bool = False


@dataclass(frozen=True)
class Grammar:
    """
    문법 값 객체

    Attributes:
        start: 시작 비단말 이름
        nonterminals: 선언된 비단말 (사용자 비단말 다음에 인라인 비단말)
        productions: 파일 순서의 생성 규칙
    """
    start: str
    nonterminals: Tuple[Nonterminal, ...]
    productions: Tuple[Production, ...]
    _index: Dict[str, Nonterminal] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _by_lhs: Dict[str, Tuple[Production, ...]] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {nt.name: nt for nt in self.nonterminals}
        by_lhs: Dict[str, List[Production]] = {}
        for p in self.productions:
            by_lhs.setdefault(p.lhs, []).append(p)
        object.__setattr__(self, '_index', index)
        object.__setattr__(self, '_by_lhs', {k: tuple(v) for k, v in by_lhs.items()})

    def nonterminal(self, name: str) -> Optional[Nonterminal]:
        return self._index.get(name)

    def is_declared(self, name: str) -> bool:
        return name in self._index

    def sort_of(self, name: str) -> Sort:
        nt = self._index.get(name)
        if nt is None:
            raise GrammarError(f"unknown nonterminal {name}")
        return nt.sort

    def productions_of(self, name: str) -> Tuple[Production, ...]:
        if name not in self._index:
            raise GrammarError(f"unknown nonterminal {name}")
        return self._by_lhs.get(name, ())

    def is_inline(self, name: str) -> bool:
        nt = self._index.get(name)
        return nt is not None and nt.inline

    def user_nonterminals(self) -> Tuple[Nonterminal, ...]:
        return tuple(nt for nt in self.nonterminals if not nt.inline)

    def child_cost(self, name: str) -> int:
        """유도 높이 계산 시 자식 비단말로 내려가는 비용 (인라인 0, 사용자 1)"""
        return 0 if self.is_inline(name) else 1


def is_reserved_name(name: str) -> bool:
    """프로그램 변수로 쓸 수 없는 이름인지 확인"""
    return name in (RESERVED_INT, RESERVED_BOOL) or '#' in name or '[' in name


# ---------------------------------------------------------------------------
# 파싱
# ---------------------------------------------------------------------------

_SORTS = {s.value: s for s in Sort}
_OPERATORS = {
    'assign': [Op.ASSIGN], 'seq': [Op.SEQ], 'ite': [Op.ITE, Op.INT_ITE], 'while': [Op.WHILE],
    '+': [Op.PLUS], '-': [Op.MINUS], '*': [Op.MULT], '/': [Op.DIV],
    'not': [Op.NOT], 'and': [Op.AND], '<': [Op.LT], '==': [Op.EQ],
}


class _GrammarBuilder:
    """파싱 중 인라인 비단말을 할당하는 보조 객체"""

    def __init__(self, declared: Dict[str, Sort]):
        self.declared = declared
        self.inline: List[Nonterminal] = []
        self.inline_productions: List[Production] = []
        self.counter = 0

    def is_reference(self, sym: str) -> bool:
        return sym in self.declared or sym[:1].isupper()

    def rhs(self, expr, sort: Sort) -> RhsSkeleton:
        """최상위 우변을 골격으로 변환"""
        if isinstance(expr, QuotedString):
            raise GrammarError(f"{position(expr)}: unexpected string in production")
        if isinstance(expr, int):
            return self._literal(expr, sort, expr)
        if isinstance(expr, Symbol):
            sym = str(expr)
            if sym in ('true', 'false') and sort is Sort.BOOL and sym not in self.declared:
                return RhsSkeleton(Op.TRUE if sym == 'true' else Op.FALSE)
            if self.is_reference(sym):
                target = self.declared.get(sym)
                if target is not None and target is not sort:
                    raise GrammarError(
                        f"{position(expr)}: type mismatch: {sym} has sort {target.value}, expected {sort.value}")
                return RhsSkeleton(None, (sym,))
            if sort is Sort.INT:
                return RhsSkeleton(Op.VAR, (), sym)
            raise GrammarError(f"{position(expr)}: type mismatch: variable {sym} used as {sort.value}")
        if not isinstance(expr, list) or not expr:
            raise GrammarError(f"{position(expr)}: malformed production {render_sexpr(expr)}")
        key = head(expr)
        rest = expr[1:]
        if key == 'lit':
            if len(rest) != 1 or not isinstance(rest[0], int) or isinstance(rest[0], bool):
                raise GrammarError(f"{position(expr)}: (lit n) expects one integer")
            return self._literal(rest[0], sort, expr)
        if key == 'var':
            if sort is not Sort.INT:
                raise GrammarError(f"{position(expr)}: type mismatch: (var ...) used as {sort.value}")
            if len(rest) != 1 or not isinstance(rest[0], Symbol):
                raise GrammarError(f"{position(expr)}: (var x) expects one name")
            return RhsSkeleton(Op.VAR, (), str(rest[0]))
        if key in ('true', 'false'):
            if sort is not Sort.BOOL:
                raise GrammarError(f"{position(expr)}: type mismatch: ({key}) used as {sort.value}")
            return RhsSkeleton(Op.TRUE if key == 'true' else Op.FALSE)
        if key == 'skip':
            if sort is not Sort.STMT:
                raise GrammarError(f"{position(expr)}: type mismatch: (skip) used as {sort.value}")
            child = self._fresh(Sort.INT)
            self._add(child, RhsSkeleton(Op.VAR, (), SKIP_VAR))
            return RhsSkeleton(Op.ASSIGN, (child,), SKIP_VAR)
        ops = _OPERATORS.get(key)
        if ops is None:
            raise GrammarError(f"{position(expr)}: unknown operator {key or render_sexpr(expr[0])}")
        matching = [op for op in ops if op.sort is sort]
        if not matching:
            raise GrammarError(f"{position(expr)}: type mismatch: {key} produces {ops[0].sort.value}, expected {sort.value}")
        op = matching[0]
        name = None
        if op.named:
            if not rest or not isinstance(rest[0], Symbol):
                raise GrammarError(f"{position(expr)}: ({key} x ...) expects a variable name")
            name = str(rest[0])
            rest = rest[1:]
        if len(rest) != op.arity:
            raise GrammarError(f"{position(expr)}: {key} expects {op.arity} arguments, got {len(rest)}")
        args = tuple(self.child(a, s) for a, s in zip(rest, op.child_sorts))
        return RhsSkeleton(op, args, name)

    def child(self, expr, sort: Sort) -> str:
        """자식 위치의 식을 비단말 이름으로 변환 (필요 시 인라인 비단말 생성)"""
        if isinstance(expr, Symbol) and self.is_reference(str(expr)):
            sym = str(expr)
            target = self.declared.get(sym)
            if target is not None and target is not sort:
                raise GrammarError(
                    f"{position(expr)}: type mismatch: {sym} has sort {target.value}, expected {sort.value}")
            return sym
        # 전위 순서로 이름 할당 후 재귀
        name = self._fresh(sort)
        slot = len(self.inline_productions)
        self.inline_productions.append(None)
        skeleton = self.rhs(expr, sort)
        self.inline_productions[slot] = Production(name, skeleton)
        return name

    def _literal(self, n: int, sort: Sort, expr) -> RhsSkeleton:
        if sort is not Sort.INT:
            raise GrammarError(f"{position(expr)}: type mismatch: literal used as {sort.value}")
        if n < 0:
            raise GrammarError(f"{position(expr)}: literal must be non-negative")
        if n == 0:
            return RhsSkeleton(Op.ZERO)
        if n == 1:
            return RhsSkeleton(Op.ONE)
        half = n // 2
        return RhsSkeleton(Op.PLUS, (self.child(['lit', half], Sort.INT), self.child(['lit', n - half], Sort.INT)))

    def _fresh(self, sort: Sort) -> str:
        self.counter += 1
        name = f"{INLINE_PREFIX}{self.counter}"
        self.inline.append(Nonterminal(name, sort, inline=True))
        return name

    def _add(self, name: str, skeleton: RhsSkeleton):
        self.inline_productions.append(Production(name, skeleton))


def grammar_from_sexpr(expr) -> Grammar:
    """
    (grammar ...) S-식을 Grammar로 변환

    Args:
        expr: (grammar (start S) (nt ...)*) 형태의 S-식

    Returns:
        Grammar
    """
    if head(expr) != 'grammar':
        raise GrammarError(f"{position(expr)}: expected (grammar ...)")
    start = None
    declarations = []
    declared: Dict[str, Sort] = {}
    for item in expr[1:]:
        key = head(item)
        if key == 'start':
            if len(item) != 2 or not isinstance(item[1], Symbol):
                raise GrammarError(f"{position(item)}: (start S) expects one name")
            start = str(item[1])
        elif key == 'nt':
            if len(item) < 3 or not isinstance(item[1], Symbol) or str(item[2]) not in _SORTS:
                raise GrammarError(f"{position(item)}: (nt Name stmt|int|bool (rhs)*) expected")
            name = str(item[1])
            if name in declared:
                raise GrammarError(f"{position(item)}: duplicate nonterminal {name}")
            if name.startswith(INLINE_PREFIX):
                raise GrammarError(f"{position(item)}: nonterminal names may not start with {INLINE_PREFIX}")
            declared[name] = _SORTS[str(item[2])]
            declarations.append(item)
        else:
            raise GrammarError(f"{position(item)}: unexpected grammar item {render_sexpr(item)}")
    if start is None:
        raise GrammarError(f"{position(expr)}: missing (start ...)")

    builder = _GrammarBuilder(declared)
    productions: List[Production] = []
    for item in declarations:
        name = str(item[1])
        sort = declared[name]
        for rhs in item[3:]:
            if not isinstance(rhs, list) or len(rhs) != 1:
                raise GrammarError(f"{position(rhs)}: each production must be wrapped as (<rhs>)")
            productions.append(Production(name, builder.rhs(rhs[0], sort)))

    nonterminals = tuple(Nonterminal(str(i[1]), declared[str(i[1])]) for i in declarations)
    grammar = Grammar(start, nonterminals + tuple(builder.inline),
                      tuple(productions) + tuple(builder.inline_productions))
    logger.debug(f"문법 파싱 완료: 비단말 {len(nonterminals)}개, 인라인 {len(builder.inline)}개")
    return grammar


def parse_grammar(text: str) -> Grammar:
    """
    문법 파일 텍스트 파싱

    Args:
        text: (grammar ...) S-식 텍스트

    Returns:
        파일 순서를 유지한 Grammar
    """
    return grammar_from_sexpr(parse_sexpr(text))


# ---------------------------------------------------------------------------
# 렌더링
# ---------------------------------------------------------------------------

def rhs_to_sexpr(g: Grammar, rhs: RhsSkeleton):
    """우변 골격을 인라인 비단말을 펼친 S-식으로 변환"""
    if rhs.is_chain:
        return Symbol(rhs.args[0])
    op = rhs.op
    if op is Op.ZERO:
        return ['lit', 0]
    if op is Op.ONE:
        return ['lit', 1]
    if op is Op.VAR:
        return ['var', rhs.name]
    if op in (Op.TRUE, Op.FALSE):
        return [op.keyword]
    if op is Op.ASSIGN and rhs.name == SKIP_VAR and g.is_inline(rhs.args[0]):
        inner = g.productions_of(rhs.args[0])
        if len(inner) == 1 and inner[0].rhs == RhsSkeleton(Op.VAR, (), SKIP_VAR):
            return ['skip']
    items = [op.keyword]
    if op.named:
        items.append(rhs.name)
    for child in rhs.args:
        if g.is_inline(child):
            items.append(rhs_to_sexpr(g, g.productions_of(child)[0].rhs))
        else:
            items.append(Symbol(child))
    return items


def render_rhs(g: Grammar, rhs: RhsSkeleton) -> str:
    return render_sexpr(rhs_to_sexpr(g, rhs))


def render_production(g: Grammar, p: Production) -> str:
    """진단용 'N ::= rhs' 표기"""
    return f"{p.lhs} ::= {render_rhs(g, p.rhs)}"


def grammar_to_sexpr(g: Grammar):
    items = ['grammar', ['start', g.start]]
    for nt in g.user_nonterminals():
        entry = ['nt', nt.name, nt.sort.value]
        entry.extend([rhs_to_sexpr(g, p.rhs)] for p in g.productions_of(nt.name))
        items.append(entry)
    return items


def render_grammar(g: Grammar) -> str:
    """
    문법을 파일 형식 텍스트로 렌더링 (parse_grammar의 역)

    Args:
        g: 문법

    Returns:
        한 비단말당 한 줄인 텍스트
    """
    sexpr = grammar_to_sexpr(g)
    lines = [f"(grammar {render_sexpr(sexpr[1])}"]
    lines.extend(f"  {render_sexpr(entry)}" for entry in sexpr[2:])
    return '\n'.join(lines) + ')'


def find_production(g: Grammar, expr, lhs: Optional[str] = None) -> Optional[Production]:
    """
    우변 S-식과 같은 모양의 생성 규칙 검색 (증명 파일의 (rhs ...) 주어용)

    Args:
        g: 문법
        expr: 우변 S-식
        lhs: 좌변 제한 (None이면 전체)

    Returns:
        일치하는 첫 생성 규칙 또는 None
    """
    wanted = render_sexpr(_canonical_rhs(g, expr))
    for p in g.productions:
        if g.is_inline(p.lhs) or (lhs is not None and p.lhs != lhs):
            continue
        if render_rhs(g, p.rhs) == wanted:
            return p
    return None


def find_inline(g: Grammar, expr) -> Optional[str]:
    """우변 S-식과 같은 모양의 인라인 비단말 이름 (없으면 None)"""
    wanted = render_sexpr(_canonical_rhs(g, expr))
    for nt in g.nonterminals:
        if nt.inline and render_rhs(g, g.productions_of(nt.name)[0].rhs) == wanted:
            return nt.name
    return None


def _canonical_rhs(g: Grammar, expr):
    """작성자가 쓴 우변을 문법과 같은 방식으로 정규화"""
    declared = {nt.name: nt.sort for nt in g.user_nonterminals()}
    builder = _GrammarBuilder(declared)
    for sort in (Sort.STMT, Sort.INT, Sort.BOOL):
        mark = (len(builder.inline), len(builder.inline_productions))
        try:
            skeleton = builder.rhs(expr, sort)
        except GrammarError:
            del builder.inline[mark[0]:]
            del builder.inline_productions[mark[1]:]
            continue
        scratch = Grammar(g.start, g.nonterminals + tuple(builder.inline),
                          g.productions + tuple(builder.inline_productions))
        return rhs_to_sexpr(scratch, skeleton)
    raise GrammarError(f"{position(expr)}: malformed production {render_sexpr(expr)}")


# ---------------------------------------------------------------------------
# 검증과 질의
# ---------------------------------------------------------------------------

def validate_grammar(g: Grammar) -> List[str]:
    """
    문법 적합성 검사

    Args:
        g: 문법

    Returns:
        진단 메시지 리스트 (비어 있으면 유효)
    """
    diagnostics: List[str] = []
    if not g.is_declared(g.start):
        diagnostics.append(f"undeclared start nonterminal {g.start}")
    reported = set()
    for p in g.productions:
        if not g.is_declared(p.lhs):
            diagnostics.append(f"undeclared nonterminal {p.lhs}")
            continue
        lhs_sort = g.sort_of(p.lhs)
        rhs = p.rhs
        expected = (lhs_sort,) if rhs.is_chain else rhs.op.child_sorts
        if rhs.is_chain and len(rhs.args) != 1:
            diagnostics.append(f"malformed chain production in {p.lhs}")
            continue
        if not rhs.is_chain:
            if rhs.op.sort is not lhs_sort:
                diagnostics.append(
                    f"type mismatch: {p.lhs} has sort {lhs_sort.value} but {rhs.op.keyword} produces {rhs.op.sort.value}")
            if len(rhs.args) != rhs.op.arity:
                diagnostics.append(f"arity mismatch in {p.lhs}: {rhs.op.keyword} expects {rhs.op.arity}")
                continue
            if rhs.op.named:
                if not rhs.name:
                    diagnostics.append(f"missing variable name in {p.lhs}")
                elif is_reserved_name(rhs.name) and (rhs.name, 'var') not in reported:
                    reported.add((rhs.name, 'var'))
                    diagnostics.append(f"reserved variable {rhs.name}")
        for child, sort in zip(rhs.args, expected):
            if not g.is_declared(child):
                if child not in reported:
                    reported.add(child)
                    diagnostics.append(f"undeclared nonterminal {child}")
            elif g.sort_of(child) is not sort:
                diagnostics.append(
                    f"type mismatch: {child} has sort {g.sort_of(child).value}, expected {sort.value} in {p.lhs}")
    return diagnostics


def reachable_nonterminals(g: Grammar, n: str) -> FrozenSet[str]:
    """n에서 도달 가능한 비단말 집합 (n 포함)"""
    if not g.is_declared(n):
        raise GrammarError(f"unknown nonterminal {n}")
    seen = {n}
    stack = [n]
    while stack:
        current = stack.pop()
        for p in g.productions_of(current):
            for child in p.rhs.args:
                if child not in seen and g.is_declared(child):
                    seen.add(child)
                    stack.append(child)
    return frozenset(seen)


def vars_of_nonterminal(g: Grammar, n: str) -> FrozenSet[str]:
    """
    n에서 도달 가능한 생성 규칙에 나오는 프로그램 변수 집합 ∪ {e_t, b_t}

    Args:
        g: 문법
        n: 비단말 이름

    Returns:
        변수 이름 집합 (_skip 제외)
    """
    names = {RESERVED_INT, RESERVED_BOOL}
    for nt in reachable_nonterminals(g, n):
        for p in g.productions_of(nt):
            if p.rhs.name and p.rhs.name != SKIP_VAR:
                names.add(p.rhs.name)
    return frozenset(names)


def build_term(rhs: RhsSkeleton, children: Tuple[Term, ...]) -> Term:
    """골격과 자식 항으로 항 구성 (체인이면 자식 그대로)"""
    if rhs.is_chain:
        return children[0]
    return Term(rhs.op, tuple(children), rhs.name)


def minimal_terms(g: Grammar) -> Dict[str, Term]:
    """
    비단말별로 유도 높이가 가장 작은 항 하나 계산 (공언어 비단말은 제외)

    Args:
        g: 문법

    Returns:
        비단말 이름 → 항
    """
    found: Dict[str, Term] = {}
    changed = True
    while changed:
        changed = False
        snapshot = dict(found)
        for nt in g.nonterminals:
            if nt.name in found:
                continue
            for p in g.productions_of(nt.name):
                if all(c in snapshot for c in p.rhs.args):
                    found[nt.name] = build_term(p.rhs, tuple(snapshot[c] for c in p.rhs.args))
                    changed = True
                    break
    return found


def derives(g: Grammar, n: str, t: Term) -> bool:
    """
    항 t가 L(n)에 속하는지 유도 재구성으로 판정

    Args:
        g: 문법
        n: 비단말
        t: 항

    Returns:
        속하면 True
    """
    memo: Dict[Tuple[str, int], bool] = {}
    active = set()
    cuts = [0]

    def walk(nt: str, term: Term) -> bool:
        key = (nt, id(term))
        if key in memo:
            return memo[key]
        if key in active:
            # 체인 순환
            cuts[0] += 1
            return False
        before = cuts[0]
        active.add(key)
        result = False
        for p in g.productions_of(nt):
            rhs = p.rhs
            if rhs.is_chain:
                if g.is_declared(rhs.args[0]) and walk(rhs.args[0], term):
                    result = True
                    break
                continue
            if rhs.op is not term.op or rhs.name != term.name:
                continue
            if all(g.is_declared(c) and walk(c, a) for c, a in zip(rhs.args, term.args)):
                result = True
                break
        active.discard(key)
        # 순환으로 잘린 실패는 캐시하지 않음
        if result or cuts[0] == before:
            memo[key] = result
        return result

    if not g.is_declared(n):
        raise GrammarError(f"unknown nonterminal {n}")
    return walk(n, t)
