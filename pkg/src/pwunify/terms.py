"""First-order terms: syntax trees, parsing, and the hash-consed term DAG.

Terms are written Prolog style: identifiers starting with an uppercase
letter or ``_`` are variables, everything else is a function symbol, and a
bare lowercase identifier is a constant.  Both the parser and the DAG
builder use explicit stacks, so arbitrarily deep terms are fine.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

NodeId = int


class ParseError(ValueError):
    def __init__(self, offset: int, expected: str, found: str = "end of input"):
        self.offset = offset
        self.expected = expected
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class ArityError(ValueError):
    def __init__(self, name: str, known: int, got: int):
        self.name = name
        self.known = known
        self.got = got
        super().__init__(f"function {name!r} used with arity {got}, previously {known}")


class Kind(enum.Enum):
    VARIABLE = "variable"
    FUNCTION = "function"


@dataclass(frozen=True)
class Symbol:
    kind: Kind
    name: str
    arity: int = 0

    def __post_init__(self):
        if self.kind is Kind.VARIABLE and self.arity != 0:
            raise ValueError("variables have arity 0")
        if self.arity < 0:
            raise ValueError("negative arity")

    @property
    def is_variable(self) -> bool:
        return self.kind is Kind.VARIABLE

    def __str__(self) -> str:
        return self.name if self.is_variable else f"{self.name}/{self.arity}"


# -- syntax trees ---------------------------------------------------------
#
# These plain trees double as the unshared representation used by the
# Robinson oracle.  Equality on them is structural.


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    functor: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return format_tree(self)


Term = Union[Var, App]


def format_tree(term: Term) -> str:
    parts: list[str] = []
    work: list[object] = [term]
    while work:
        item = work.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Var):
            parts.append(item.name)
        elif not item.args:
            parts.append(item.functor)
        else:
            parts.append(item.functor + "(")
            work.append(")")
            for i in range(len(item.args) - 1, -1, -1):
                work.append(item.args[i])
                if i:
                    work.append(",")
    return "".join(parts)


def tree_size(term: Term) -> int:
    """Number of symbol occurrences in a tree."""
    count = 0
    work = [term]
    while work:
        t = work.pop()
        count += 1
        if isinstance(t, App):
            work.extend(t.args)
    return count


# -- parser ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))", re.S)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def skip_ws(self) -> int:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos

    def error(self, expected: str) -> ParseError:
        pos = self.skip_ws()
        found = repr(self.text[pos:pos + 10]) if pos < len(self.text) else "end of input"
        return ParseError(self._offset(pos), expected, found)

    def ident(self) -> str:
        self.skip_ws()
        m = _TOKEN.match(self.text, self.pos)
        if m is None or m.group(1) is None:
            raise self.error("identifier")
        self.pos = m.end()
        return m.group(1)

    def peek(self) -> str:
        pos = self.skip_ws()
        return self.text[pos] if pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False


def _is_variable_name(name: str) -> bool:
    return name[0] == "_" or name[0].isupper()


def parse_term(text: str) -> Term:
    """Parse one term.

    Raises ParseError (with a UTF-8 byte offset) on malformed input and
    ArityError if one function name is used with two arities.
    """
    lex = _Lexer(text)
    arities: dict[str, int] = {}
    # open applications: (functor, collected args)
    frames: list[tuple[str, list[Term]]] = []

    def close(functor: str, args: tuple[Term, ...]) -> App:
        known = arities.setdefault(functor, len(args))
        if known != len(args):
            raise ArityError(functor, known, len(args))
        return App(functor, args)

    while True:
        name = lex.ident()
        node: Term
        if _is_variable_name(name):
            node = Var(name)
        elif lex.take("("):
            frames.append((name, []))
            continue
        else:
            node = close(name, ())

        while True:
            if not frames:
                if lex.peek():
                    raise lex.error("end of input")
                return node
            frames[-1][1].append(node)
            if lex.take(","):
                break
            if lex.take(")"):
                functor, args = frames.pop()
                node = close(functor, tuple(args))
                continue
            raise lex.error("',' or ')'")


# -- term DAG -------------------------------------------------------------


class TermNode:
    __slots__ = ("symbol", "children", "parents")

    def __init__(self, symbol: Symbol, children: tuple[NodeId, ...]):
        self.symbol = symbol
        self.children = children
        # one entry per child slot that points here
        self.parents: list[NodeId] = []

    def __repr__(self) -> str:
        return f"TermNode({self.symbol}, children={self.children})"


@dataclass(frozen=True)
class SizeExceeded:
    """Returned by :func:`print_term` when the expanded term is too large."""

    count: int

    def __str__(self) -> str:
        return f"<dag:{self.count} symbols>"


@dataclass
class TermDag:
    """Arena of maximally shared term nodes.

    Structurally equal subterms always get the same NodeId, across every
    call to :meth:`intern`.  Node ids are dense and children always have
    smaller ids than their parents.
    """

    nodes: list[TermNode] = field(default_factory=list)
    table: dict[tuple[Symbol, tuple[NodeId, ...]], NodeId] = field(default_factory=dict)
    roots: list[NodeId] = field(default_factory=list)
    arities: dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[NodeId]:
        return iter(range(len(self.nodes)))

    def __getitem__(self, node: NodeId) -> TermNode:
        return self.nodes[node]

    def symbol(self, node: NodeId) -> Symbol:
        return self.nodes[node].symbol

    def children(self, node: NodeId) -> tuple[NodeId, ...]:
        return self.nodes[node].children

    def parents(self, node: NodeId) -> list[NodeId]:
        return self.nodes[node].parents

    def is_variable(self, node: NodeId) -> bool:
        return self.nodes[node].symbol.kind is Kind.VARIABLE

    def make(self, symbol: Symbol, children: tuple[NodeId, ...] = ()) -> NodeId:
        """Intern a single node whose children are already in the DAG."""
        if len(children) != symbol.arity:
            raise ValueError(f"{symbol} given {len(children)} children")
        key = (symbol, children)
        node = self.table.get(key)
        if node is not None:
            return node
        if not symbol.is_variable:
            known = self.arities.setdefault(symbol.name, symbol.arity)
            if known != symbol.arity:
                raise ArityError(symbol.name, known, symbol.arity)
        node = len(self.nodes)
        self.nodes.append(TermNode(symbol, children))
        self.table[key] = node
        for child in children:
            self.nodes[child].parents.append(node)
        return node

    def variable(self, name: str) -> NodeId:
        return self.make(Symbol(Kind.VARIABLE, name))

    def intern(self, term: Term, root: bool = False) -> NodeId:
        """Hash-cons a syntax tree bottom-up and return its node."""
        out: list[NodeId] = []
        work: list[tuple[Term, bool]] = [(term, False)]
        while work:
            t, expanded = work.pop()
            if isinstance(t, Var):
                out.append(self.variable(t.name))
            elif t.args and not expanded:
                work.append((t, True))
                work.extend((a, False) for a in reversed(t.args))
            else:
                n = len(t.args)
                kids = tuple(out[len(out) - n:]) if n else ()
                if n:
                    del out[len(out) - n:]
                out.append(self.make(Symbol(Kind.FUNCTION, t.functor, n), kids))
        if root:
            self.roots.append(out[0])
        return out[0]

    def parse(self, text: str, root: bool = True) -> NodeId:
        return self.intern(parse_term(text), root=root)

    def reachable(self, *starts: NodeId) -> set[NodeId]:
        seen = set(starts)
        work = list(starts)
        while work:
            for c in self.nodes[work.pop()].children:
                if c not in seen:
                    seen.add(c)
                    work.append(c)
        return seen

    def render_node(self, node: NodeId) -> str:
        """Trace form: ``Name#id`` for variables, ``name/arity#id`` otherwise."""
        return f"{self.nodes[node].symbol}#{node}"

    def sizes(self, root: NodeId, memo: Optional[dict[NodeId, int]] = None) -> dict[NodeId, int]:
        """Expanded symbol counts of every node under ``root``.

        Pass the same ``memo`` across calls to share work between roots.
        """
        size: dict[NodeId, int] = {} if memo is None else memo
        work = [root]
        while work:
            n = work[-1]
            if n in size:
                work.pop()
                continue
            pending = [c for c in self.nodes[n].children if c not in size]
            if pending:
                work.extend(pending)
                continue
            work.pop()
            size[n] = 1 + sum(size[c] for c in self.nodes[n].children)
        return size

    def to_tree(self, root: NodeId) -> Term:
        """Expand a node into an unshared syntax tree."""
        built: dict[NodeId, Term] = {}
        work = [root]
        while work:
            n = work[-1]
            if n in built:
                work.pop()
                continue
            node = self.nodes[n]
            pending = [c for c in node.children if c not in built]
            if pending:
                work.extend(pending)
                continue
            work.pop()
            if node.symbol.is_variable:
                built[n] = Var(node.symbol.name)
            else:
                built[n] = App(node.symbol.name, tuple(built[c] for c in node.children))
        return built[root]


def print_term(dag: TermDag, root: NodeId, size_cap: int = 4096,
               memo: Optional[dict[NodeId, int]] = None) -> Union[str, SizeExceeded]:
    """Fully expanded text of ``root``, or SizeExceeded if it has more than
    ``size_cap`` symbol occurrences."""
    if size_cap < 1:
        raise ValueError("size_cap must be positive")
    total = dag.sizes(root, memo)[root]
    if total > size_cap:
        return SizeExceeded(total)
    parts: list[str] = []
    work: list[object] = [root]
    while work:
        item = work.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        node = dag[item]
        if not node.children:
            parts.append(node.symbol.name)
            continue
        parts.append(node.symbol.name + "(")
        work.append(")")
        kids = node.children
        for i in range(len(kids) - 1, -1, -1):
            work.append(kids[i])
            if i:
                work.append(",")
    return "".join(parts)
