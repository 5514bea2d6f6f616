"""
S-식 리더/렌더러 모듈
문법(.ulg), 증명(.ulp), 카운터 머신(.cm) 파일이 모두 이 형식을 공유한다
"""
import re
from typing import List, Union


class SExprSyntaxError(ValueError):
    """줄/열 위치를 포함하는 S-식 구문 오류"""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class Symbol(str):
    """위치 정보를 가진 심볼"""
    line = 0
    col = 0


class QuotedString(str):
    """큰따옴표 문자열 리터럴"""
    line = 0
    col = 0


class SList(list):
    """위치 정보를 가진 리스트"""
    line = 0
    col = 0


SExpr = Union[Symbol, QuotedString, int, SList]

_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')
_INTEGER = re.compile(r'-?\d+\Z')


def _located(cls, value, line, col):
    obj = cls(value)
    obj.line = line
    obj.col = col
    return obj


def _tokens(text: str):
    """(토큰, 줄, 열) 스트림 생성"""
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SExprSyntaxError(f"invalid character {text[pos]!r}", line, pos - line_start + 1)
        tok = m.group(0)
        col = pos - line_start + 1
        if not tok[0].isspace() and tok[0] != ';':
            yield tok, line, col
        newlines = tok.count('\n')
        if newlines:
            line += newlines
            line_start = pos + tok.rfind('\n') + 1
        pos = m.end()


def parse_sexprs(text: str) -> List[SExpr]:
    """
    텍스트 안의 모든 최상위 S-식 파싱

    Args:
        text: UTF-8 텍스트

    Returns:
        S-식 리스트 (정수는 int, 심볼은 Symbol, 리스트는 SList)
    """
    stack: List[SList] = []
    top: List[SExpr] = []
    for tok, line, col in _tokens(text):
        if tok == '(':
            stack.append(_located(SList, [], line, col))
        elif tok == ')':
            if not stack:
                raise SExprSyntaxError("unexpected ')'", line, col)
            done = stack.pop()
            (stack[-1] if stack else top).append(done)
        else:
            if tok.startswith('"'):
                if len(tok) < 2 or not tok.endswith('"'):
                    raise SExprSyntaxError("unterminated string", line, col)
                atom = _located(QuotedString, re.sub(r'\\(.)', r'\1', tok[1:-1]), line, col)
            elif _INTEGER.match(tok):
                atom = int(tok)
            else:
                atom = _located(Symbol, tok, line, col)
            (stack[-1] if stack else top).append(atom)
    if stack:
        raise SExprSyntaxError("unexpected end of input, missing ')'", stack[-1].line, stack[-1].col)
    return top


def parse_sexpr(text: str) -> SExpr:
    """
    정확히 하나의 S-식 파싱

    Args:
        text: 텍스트

    Returns:
        S-식
    """
    items = parse_sexprs(text)
    if len(items) != 1:
        raise SExprSyntaxError(f"expected exactly one expression, found {len(items)}", 1, 1)
    return items[0]


def render_sexpr(expr) -> str:
    """S-식을 한 줄 텍스트로 변환"""
    if isinstance(expr, QuotedString):
        escaped = expr.replace('\\', '\\\\').replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(expr, (list, tuple)):
        return '(' + ' '.join(render_sexpr(e) for e in expr) + ')'
    if isinstance(expr, bool):
        return 'true' if expr else 'false'
    return str(expr)


def position(expr) -> str:
    """진단 메시지용 위치 문자열"""
    line = getattr(expr, 'line', 0)
    col = getattr(expr, 'col', 0)
    return f"{line}:{col}" if line else "?:?"


def head(expr) -> str:
    """리스트 S-식의 첫 심볼 (없으면 빈 문자열)"""
    if isinstance(expr, list) and expr and isinstance(expr[0], str) and not isinstance(expr[0], QuotedString):
        return str(expr[0])
    return ''
