"""
문법 항 열거기
유도 높이: 리프 생성 규칙 0, 사용자 비단말 자식은 +1, 인라인 자식은 +0, 체인 규칙은 +1
"""
import itertools
import logging
from typing import Dict, Iterator, List, Set, Tuple

from src.core.grammar import Grammar, GrammarError, build_term
from src.core.terms import Term

logger = logging.getLogger(__name__)


class TermEnumerator:
    """
    반복 심화 순서의 중복 없는 항 열거기 (높이별 메모이제이션)

    Args:
        grammar: 문법
    """

    def __init__(self, grammar: Grammar):
        self.grammar = grammar
        self._levels: Dict[str, List[Tuple[Term, ...]]] = {}
        self._seen: Dict[str, Set[Term]] = {}

    def exact(self, n: str, h: int) -> Tuple[Term, ...]:
        """최소 유도 높이가 정확히 h인 L(n)의 항"""
        if not self.grammar.is_declared(n):
            raise GrammarError(f"unknown nonterminal {n}")
        if h < 0:
            return ()
        levels = self._levels.setdefault(n, [])
        seen = self._seen.setdefault(n, set())
        while len(levels) <= h:
            level = len(levels)
            fresh: List[Term] = []
            for term in self._generate(n, level):
                if term not in seen:
                    seen.add(term)
                    fresh.append(term)
            levels.append(tuple(fresh))
        return levels[h]

    def terms_upto(self, n: str, depth: int) -> List[Tuple[Term, int]]:
        """높이 depth 이하의 (항, 높이) 리스트"""
        out: List[Tuple[Term, int]] = []
        for h in range(depth + 1):
            out.extend((t, h) for t in self.exact(n, h))
        return out

    def _generate(self, n: str, h: int) -> Iterator[Term]:
        g = self.grammar
        for p in g.productions_of(n):
            rhs = p.rhs
            if rhs.is_chain:
                if g.is_declared(rhs.args[0]):
                    yield from self.exact(rhs.args[0], h - 1)
                continue
            if not rhs.args:
                if h == 0:
                    yield build_term(rhs, ())
                continue
            if any(not g.is_declared(c) for c in rhs.args):
                continue
            costs = [g.child_cost(c) for c in rhs.args]
            if any(h - k < 0 for k in costs):
                continue
            pools = [self.terms_upto(c, h - k) for c, k in zip(rhs.args, costs)]
            for combo in itertools.product(*pools):
                if max(k + ch for k, (_, ch) in zip(costs, combo)) == h:
                    yield build_term(rhs, tuple(t for t, _ in combo))


def enumerate_terms(g: Grammar, n: str, depth: int) -> Iterator[Term]:
    """
    L(n) 중 유도 높이 depth 이하의 항을 한 번씩 결정적 순서로 생성

    Args:
        g: 문법
        n: 비단말
        depth: 높이 상한 (0 이상)

    Returns:
        항 이터레이터
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    enumerator = TermEnumerator(g)
    for term, _ in enumerator.terms_upto(n, depth):
        yield term


def count_terms(g: Grammar, n: str, depth: int) -> int:
    """
    유도 트리 개수 점화식 (중복 제거 없음, 모호하지 않은 문법에서 열거 개수와 같다)

    Args:
        g: 문법
        n: 비단말
        depth: 높이 상한

    Returns:
        높이 depth 이하의 유도 개수
    """
    memo: Dict[Tuple[str, int], int] = {}

    def count(nt: str, d: int) -> int:
        if d < 0 or not g.is_declared(nt):
            return 0
        key = (nt, d)
        if key not in memo:
            total = 0
            for p in g.productions_of(nt):
                rhs = p.rhs
                if rhs.is_chain:
                    total += count(rhs.args[0], d - 1)
                elif not rhs.args:
                    total += 1
                else:
                    product = 1
                    for c in rhs.args:
                        product *= count(c, d - g.child_cost(c))
                    total += product
            memo[key] = total
        return memo[key]

    if not g.is_declared(n):
        raise GrammarError(f"unknown nonterminal {n}")
    return count(n, depth)
