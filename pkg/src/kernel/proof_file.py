"""
증명 파일(.ulp) 리더

    (proof
      (problem "<file.ulg>") | (problem (grammar ...) ...) | (grammar-ref "<file>") | (grammar ...)
      (width n)?
      (pred NAME <pred>)*            ; 단언 매크로, @NAME 으로 참조
      (lemmas (lemma <id> <pred>)*)?
      (def <name> <node>)*
      <node>)

    node    := (node <Rule> (triple <pre|_> <subject|_> <post|_>)? (ann <key> <value>...)* <node>*)
             | (use <name>)
    subject := (nt N) | (rhs <production>) | _
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.core.grammar import Grammar, GrammarError, find_inline, find_production, grammar_from_sexpr
from src.core.problem import SynthesisProblem, load_problem, problem_from_sexpr
from src.core.sexpr import QuotedString, SList, Symbol, head, parse_sexpr, position, render_sexpr
from src.assertions.parser import predicate_from_sexpr
from src.assertions.predicate import PredicateSyntaxError
from src.entailment.lemmas import LemmaRegistry
from src.kernel.judgment import Subject

logger = logging.getLogger(__name__)

EXPRESSION_RULES = ('Zero', 'One', 'True', 'False', 'Var', 'Not',
                    'Plus', 'Minus', 'Mult', 'Div', 'LT', 'Eq', 'And')
STATEMENT_RULES = ('Assign', 'Seq', 'ITE', 'While')
STRUCTURAL_RULES = ('Weaken', 'Conj', 'GrmDisj', 'Inv', 'Sub1', 'Sub2', 'HP', 'ApplyHP')
RULES = EXPRESSION_RULES + STATEMENT_RULES + STRUCTURAL_RULES

HOLE = '_'
MACRO_SIGIL = '@'


class ProofFormatError(ValueError):
    """증명 파일 구조 오류"""


@dataclass
class ProofNode:
    """
    증명 트리 노드 (구멍은 None)

    Attributes:
        rule: 규칙 이름
        pre, subject, post: 작성된 삼중쌍 (구멍이면 None)
        simplify: (ann simplify <pred>) 단언
        renames: (ann rename (z y) ...) 쌍 (z를 y로)
        children: 전제 노드
        where: 소스 위치
    """
    rule: str
    pre: object = None
    subject: Optional[Subject] = None
    post: object = None
    simplify: object = None
    renames: Tuple[Tuple[str, str], ...] = ()
    children: List['ProofNode'] = field(default_factory=list)
    where: str = ''

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)


@dataclass
class ProofDocument:
    """읽어 들인 증명 파일"""
    grammar: Grammar
    root: ProofNode
    problem: Optional[SynthesisProblem] = None
    width: Optional[int] = None
    lemmas: Tuple[Tuple[str, object], ...] = ()

    def registry(self) -> LemmaRegistry:
        reg = LemmaRegistry()
        for lemma_id, pred in self.lemmas:
            reg.register(lemma_id, pred)
        return reg


def _error(message: str, expr) -> ProofFormatError:
    return ProofFormatError(f"{position(expr)}: {message}")


def _is_hole(expr) -> bool:
    return isinstance(expr, Symbol) and expr == HOLE


class _Reader:
    """문서 단위 파싱 상태 (매크로, def, 기호 변수)"""

    def __init__(self, base_dir: Optional[Path]):
        self.base_dir = base_dir
        self.grammar: Optional[Grammar] = None
        self.problem: Optional[SynthesisProblem] = None
        self.width: Optional[int] = None
        self.macros: Dict[str, object] = {}
        self.defs: Dict[str, object] = {}
        self.lemmas: List[Tuple[str, object]] = []
        self._expanding: List[str] = []

    @property
    def scalars(self) -> Tuple[str, ...]:
        return self.problem.symbolic_vars if self.problem is not None else ()

    # -- 파일 참조 -------------------------------------------------------------

    def _load(self, expr) -> SynthesisProblem:
        if not isinstance(expr, QuotedString):
            raise _error("expected a quoted file name", expr)
        path = Path(str(expr))
        if not path.is_absolute() and self.base_dir is not None:
            path = self.base_dir / path
        try:
            return load_problem(path)
        except FileNotFoundError:
            raise _error(f"file not found: {path}", expr)

    def header(self, item):
        key = head(item)
        if key == 'problem':
            if len(item) == 2 and isinstance(item[1], QuotedString):
                self.problem = self._load(item[1])
            else:
                self.problem = problem_from_sexpr(item)
            self.grammar = self.problem.grammar
            if self.width is None:
                self.width = self.problem.width
        elif key == 'grammar-ref':
            if len(item) != 2:
                raise _error("(grammar-ref \"file\") expects one file name", item)
            self.grammar = self._load(item[1]).grammar
        elif key == 'grammar':
            self.grammar = grammar_from_sexpr(item)
        elif key == 'width':
            if len(item) != 2 or not isinstance(item[1], int) or item[1] < 1:
                raise _error("(width n) expects a positive integer", item)
            self.width = item[1]
        elif key == 'pred':
            if len(item) != 3 or not isinstance(item[1], Symbol):
                raise _error("(pred NAME <pred>) expected", item)
            name = str(item[1])
            if name in self.macros:
                raise _error(f"duplicate predicate macro {name}", item)
            self.macros[name] = self.expand(item[2])
        elif key == 'lemmas':
            for entry in item[1:]:
                if head(entry) != 'lemma' or len(entry) != 3:
                    raise _error("(lemma <id> <pred>) expected", entry)
                lemma_id = str(entry[1])
                if any(lemma_id == known for known, _ in self.lemmas):
                    raise _error(f"duplicate lemma id: {lemma_id}", entry)
                self.lemmas.append((lemma_id, self.predicate(entry[2])))
        elif key == 'def':
            if len(item) != 3 or not isinstance(item[1], Symbol):
                raise _error("(def <name> <node>) expected", item)
            self.defs[str(item[1])] = item[2]
        else:
            return False
        return True

    # -- 단언 ------------------------------------------------------------------

    def expand(self, expr):
        """@NAME 매크로 펼치기"""
        if isinstance(expr, Symbol) and expr.startswith(MACRO_SIGIL):
            name = str(expr)[1:]
            if name not in self.macros:
                raise _error(f"unknown predicate macro {name}", expr)
            return self.macros[name]
        if isinstance(expr, list):
            out = SList([self.expand(e) for e in expr])
            out.line, out.col = getattr(expr, 'line', 0), getattr(expr, 'col', 0)
            return out
        return expr

    def predicate(self, expr):
        try:
            return predicate_from_sexpr(self.expand(expr), self.scalars)
        except PredicateSyntaxError as e:
            raise ProofFormatError(str(e))

    def optional_predicate(self, expr):
        return None if _is_hole(expr) else self.predicate(expr)

    # -- 주어 ------------------------------------------------------------------

    def subject(self, expr) -> Optional[Subject]:
        if _is_hole(expr):
            return None
        key = head(expr)
        if key == 'nt' and len(expr) == 2:
            name = str(expr[1])
            if not self.grammar.is_declared(name) or self.grammar.is_inline(name):
                raise _error(f"unknown nonterminal {name}", expr)
            return name
        if key == 'rhs' and len(expr) == 2:
            try:
                production = find_production(self.grammar, expr[1])
                if production is not None:
                    return production
                inline = find_inline(self.grammar, expr[1])
            except GrammarError as e:
                raise ProofFormatError(str(e))
            if inline is not None:
                return inline
            raise _error(f"no production matches {render_sexpr(expr[1])}", expr)
        raise _error(f"expected (nt N), (rhs <production>) or _, got {render_sexpr(expr)}", expr)

    # -- 노드 ------------------------------------------------------------------

    def node(self, expr) -> ProofNode:
        key = head(expr)
        if key == 'use':
            if len(expr) != 2:
                raise _error("(use <name>) expects one name", expr)
            name = str(expr[1])
            if name not in self.defs:
                raise _error(f"unknown proof definition {name}", expr)
            if name in self._expanding:
                raise _error(f"recursive proof definition {name}", expr)
            self._expanding.append(name)
            try:
                return self.node(self.defs[name])
            finally:
                self._expanding.pop()
        if key != 'node' or len(expr) < 2:
            raise _error(f"expected (node <Rule> ...) or (use <name>), got {render_sexpr(expr)}", expr)
        rule = str(expr[1])
        if rule not in RULES:
            raise _error(f"unknown rule {rule}", expr)
        node = ProofNode(rule, where=position(expr))
        for item in expr[2:]:
            part = head(item)
            if part == 'triple':
                if len(item) != 4:
                    raise _error("(triple <pre> <subject> <post>) expects three parts", item)
                node.pre = self.optional_predicate(item[1])
                node.subject = self.subject(item[2])
                node.post = self.optional_predicate(item[3])
            elif part == 'ann':
                self.annotation(node, item)
            elif part in ('node', 'use'):
                node.children.append(self.node(item))
            else:
                raise _error(f"unexpected node item {render_sexpr(item)}", item)
        return node

    def annotation(self, node: ProofNode, item):
        if len(item) < 2:
            raise _error("(ann <key> ...) expects a key", item)
        key = str(item[1])
        values = item[2:]
        if key == 'simplify':
            if len(values) != 1:
                raise _error("(ann simplify <pred>) expects one predicate", item)
            node.simplify = self.predicate(values[0])
        elif key == 'rename':
            pairs = []
            for pair in values:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise _error("(ann rename (z y) ...) expects pairs", item)
                pairs.append((str(pair[0]), str(pair[1])))
            if not pairs:
                raise _error("(ann rename (z y) ...) expects at least one pair", item)
            node.renames = tuple(pairs)
        elif key == 'note':
            logger.debug(f"{node.where}: {' '.join(render_sexpr(v) for v in values)}")
        else:
            raise _error(f"unknown annotation {key}", item)


def proof_from_sexpr(expr, base_dir: Optional[Path] = None) -> ProofDocument:
    """
    (proof ...) S-식을 문서로 변환

    Args:
        expr: S-식
        base_dir: 상대 파일 이름의 기준 디렉터리

    Returns:
        ProofDocument
    """
    if head(expr) != 'proof':
        raise _error("expected (proof ...)", expr)
    reader = _Reader(base_dir)
    root_expr = None
    for item in expr[1:]:
        if head(item) in ('node', 'use'):
            if root_expr is not None:
                raise _error("a proof has exactly one root node", item)
            root_expr = item
            continue
        if reader.grammar is None and head(item) in ('pred', 'lemmas', 'def'):
            raise _error("the grammar must be given before predicates and nodes", item)
        if not reader.header(item):
            raise _error(f"unexpected proof item {render_sexpr(item)}", item)
    if reader.grammar is None:
        raise _error("proof has no (problem ...), (grammar-ref ...) or (grammar ...)", expr)
    if root_expr is None:
        raise _error("proof has no root node", expr)
    root = reader.node(root_expr)
    logger.debug(f"증명 파싱 완료: 노드 {root.size()}개, 보조정리 {len(reader.lemmas)}개")
    return ProofDocument(reader.grammar, root, reader.problem, reader.width, tuple(reader.lemmas))


def parse_proof(text: str, base_dir: Optional[Path] = None) -> ProofDocument:
    """증명 파일 텍스트 파싱"""
    return proof_from_sexpr(parse_sexpr(text), base_dir)


def load_proof(path: Union[str, Path]) -> ProofDocument:
    """
    증명 파일 로드 (참조 파일은 증명 파일 디렉터리 기준)

    Args:
        path: .ulp 파일 경로

    Returns:
        ProofDocument
    """
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        return parse_proof(f.read(), path.parent)
