"""Finitely presented groups: a small presentation language, free reduction,
HLT coset enumeration and permutation representations from coset tables.

The text format is ``< a, b | a^2, b^3, (a*b)^5 >``.  Words are products of
symbols joined by ``*``; ``^n`` takes integer powers (negative allowed) of a
symbol, bracketed word or commutator, and ``[u,v]`` is ``u^-1 v^-1 u v``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .perm import Permutation, PermGroup

DEFAULT_MAX_COSETS = 2_000_000

Letter = tuple  # (symbol, +1 | -1)


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CosetLimitExceeded(RuntimeError):
    """Coset enumeration hit its row budget before closing."""


class RecipeRejected(ValueError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def free_reduce(word: Sequence[Letter]) -> tuple:
    out: list = []
    for sym, e in word:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


def invert_word(word: Sequence[Letter]) -> tuple:
    return tuple((s, -e) for s, e in reversed(word))


def word_power(word, n: int) -> tuple:
    if n < 0:
        word, n = invert_word(word), -n
    return tuple(word) * n


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        sym, e = word[i]
        j = i
        while j < len(word) and word[j] == (sym, e):
            j += 1
        n = (j - i) * e
        parts.append(sym if n == 1 else f"{sym}^{n}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple, ...]

    def __post_init__(self):
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("repeated generator symbol")
        for r in self.relators:
            for sym, _ in r:
                if sym not in known:
                    raise ValueError(f"undeclared symbol {sym}")

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(-?\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("id", m.group(1), start))
            elif m.group(2):
                self.toks.append(("int", int(m.group(2)), start))
            elif m.group(3):
                self.toks.append(("op", m.group(3), start))
            pos = m.end()
        self.i = 0
        self.symbols: set = set()

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if kind is not None and (tok[0] != kind or (value is not None and tok[1] != value)):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            raise PresentationSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def presentation(self) -> Presentation:
        self.take("op", "<")
        gens = []
        if self.peek()[:2] != ("op", "|") and self.peek()[:2] != ("op", ">"):
            gens.append(self.take("id")[1])
            while self.peek()[:2] == ("op", ","):
                self.take()
                gens.append(self.take("id")[1])
        self.symbols = set(gens)
        rels = []
        if self.peek()[:2] == ("op", "|"):
            self.take()
            if self.peek()[:2] != ("op", ">"):
                rels.append(self.relation())
                while self.peek()[:2] == ("op", ","):
                    self.take()
                    rels.append(self.relation())
        self.take("op", ">")
        if self.peek()[0] != "end":
            raise PresentationSyntaxError("trailing text", self.peek()[2])
        return Presentation(tuple(gens), tuple(rels))

    def relation(self):
        w = self.word()
        if self.peek()[:2] == ("op", "="):
            self.take()
            w = free_reduce(w + invert_word(self.word()))
        return w

    def word(self):
        out = self.term()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            out = out + self.term()
        return free_reduce(out)

    def term(self):
        base = self.factor()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take("int")
            base = word_power(base, tok[1])
        return base

    def factor(self):
        tok = self.peek()
        if tok[0] == "id":
            self.take()
            if tok[1] not in self.symbols:
                raise PresentationSyntaxError(f"undeclared symbol {tok[1]!r}", tok[2])
            return ((tok[1], 1),)
        if tok[0] == "int" and tok[1] == 1:
            self.take()
            return ()
        if tok[:2] == ("op", "("):
            self.take()
            w = self.word()
            self.take("op", ")")
            return w
        if tok[:2] == ("op", "["):
            self.take()
            u = self.word()
            self.take("op", ",")
            v = self.word()
            self.take("op", "]")
            return invert_word(u) + invert_word(v) + u + v
        got = tok[1] if tok[0] != "end" else "end of input"
        raise PresentationSyntaxError(f"unexpected {got!r}", tok[2])


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def parse_word(text: str, generators: Sequence[str]) -> tuple:
    p = _Parser(text)
    p.symbols = set(generators)
    w = p.word()
    if p.peek()[0] != "end":
        raise PresentationSyntaxError("trailing text", p.peek()[2])
    return w


# ---------------------------------------------------------------------------
# coset enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetTable:
    generators: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]  # column 2i is generator i, column 2i+1 its inverse

    @property
    def index(self) -> int:
        return len(self.rows)

    def is_closed(self) -> bool:
        return all(x >= 0 for row in self.rows for x in row)

    def trace(self, coset: int, word) -> int:
        col = {g: i for i, g in enumerate(self.generators)}
        for sym, e in word:
            coset = self.rows[coset][2 * col[sym] + (0 if e > 0 else 1)]
        return coset


def _encode(word, col):
    return [2 * col[s] + (0 if e > 0 else 1) for s, e in word]


def todd_coxeter(P: Presentation, subgroup_words=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """HLT enumeration of the cosets of ``<subgroup_words>`` in the presented group."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ngen = len(P.generators)
    ncol = 2 * ngen
    col = {g: i for i, g in enumerate(P.generators)}
    rels = [_encode(r, col) for r in P.relators if r]
    subs = [_encode(free_reduce(w), col) for w in subgroup_words]
    subs = [w for w in subs if w]

    table: list[list[int]] = [[-1] * ncol]
    parent = [0]

    def inv(x):
        return x ^ 1

    def define(c, x):
        if len(table) >= max_cosets:
            raise CosetLimitExceeded(f"more than {max_cosets} cosets defined")
        n = len(table)
        table.append([-1] * ncol)
        parent.append(n)
        table[c][x] = n
        table[n][inv(x)] = c

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            row = table[e]
            for x in range(ncol):
                f = row[x]
                if f < 0:
                    continue
                table[f][inv(x)] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][inv(x)] >= 0:
                    merge(e1, table[f1][inv(x)], queue)
                else:
                    table[e1][x] = f1
                    table[f1][inv(x)] = e1

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv(w[j])] >= 0:
                b = table[b][inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv(w[i])] = f
                return
            define(f, w[i])

    for w in subs:
        scan_and_fill(0, w)
    c = 0
    while c < len(table):
        if parent[c] == c:
            for r in rels:
                scan_and_fill(c, r)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(ncol):
                    if table[c][x] < 0:
                        define(c, x)
        c += 1

    live = [i for i in range(len(table)) if parent[i] == i]
    renum = {old: new for new, old in enumerate(live)}
    rows = tuple(tuple(renum[table[i][x]] for x in range(ncol)) for i in live)
    return CosetTable(P.generators, rows)


def perm_rep(T: CosetTable) -> tuple[PermGroup, dict]:
    """Permutation action of each generator on the cosets."""
    if not T.is_closed():
        raise ValueError("coset table is not closed")
    n = T.index
    gens = {}
    for i, g in enumerate(T.generators):
        gens[g] = Permutation._raw(tuple(row[2 * i] for row in T.rows))
    return PermGroup([gens[g] for g in T.generators], n), gens


def evaluate_word(word, images: dict, degree: int) -> Permutation:
    out = Permutation.identity(degree)
    for sym, e in word:
        out = out * (images[sym] if e > 0 else images[sym].inverse())
    return out


# ---------------------------------------------------------------------------
# cover recipes
# ---------------------------------------------------------------------------

RECIPE_DIR = Path(__file__).parent / "data" / "covers"


def load_recipe(name_or_path) -> dict:
    path = Path(name_or_path)
    if not path.suffix:
        path = RECIPE_DIR / f"{name_or_path}.json"
    with open(path) as fh:
        recipe = json.load(fh)
    recipe.setdefault("name", path.stem)
    return recipe


def available_recipes() -> list[str]:
    return sorted(p.stem for p in RECIPE_DIR.glob("*.json"))


def validate_cover_recipe(recipe: dict, max_cosets: int = DEFAULT_MAX_COSETS, check_presented_order: bool = True):
    """Re-derive a central cover from its recipe, checking every claim it makes.

    The presented group is enumerated over the trivial subgroup to confirm
    its order; a permutation model is then taken from the cosets of the
    recipe's ``subgroup`` words (trivial if absent) and must have the same
    order, i.e. be faithful.
    """
    from .catalog import make_group
    from .cover import build_cover

    name = recipe.get("name", "recipe")
    try:
        P = parse_presentation(recipe["presentation"])
    except (KeyError, ValueError) as exc:
        raise RecipeRejected("presentation", str(exc)) from exc
    expected = int(recipe["expected_order"])
    sub = [parse_word(w, P.generators) for w in recipe.get("subgroup", [])]

    if check_presented_order or not sub:
        try:
            full = todd_coxeter(P, (), max_cosets)
        except CosetLimitExceeded as exc:
            raise RecipeRejected("order", f"{name}: enumeration did not close ({exc})") from exc
        if full.index != expected:
            raise RecipeRejected("order", f"{name}: presented group has order {full.index}, expected {expected}")
    table = full if not sub else todd_coxeter(P, sub, max_cosets)
    cover_group, images = perm_rep(table)
    if cover_group.order != expected:
        raise RecipeRejected(
            "faithful", f"{name}: permutation model has order {cover_group.order}, expected {expected}"
        )

    central = recipe.get("central", [])
    if isinstance(central, str):
        central = [central]
    zs = []
    for entry in central:
        text = entry["word"] if isinstance(entry, dict) else entry
        z = evaluate_word(parse_word(text, P.generators), images, table.index)
        if isinstance(entry, dict) and "order" in entry and z.order() != int(entry["order"]):
            raise RecipeRejected("central", f"{name}: {text} has order {z.order()}, declared {entry['order']}")
        if not all(z * g == g * z for g in cover_group.gens):
            raise RecipeRejected("central", f"{name}: {text} is not central")
        zs.append(z)

    try:
        G = make_group(recipe["quotient"])
    except ValueError as exc:
        raise RecipeRejected("quotient", str(exc)) from exc
    qimgs = recipe["quotient_images"]
    if len(qimgs) != len(P.generators):
        raise RecipeRejected("quotient", f"{name}: need one image per generator")
    targets = [Permutation.from_cycles(t, G.degree) for t in qimgs]
    try:
        return build_cover(cover_group, zs, G, targets, name=name)
    except ValueError as exc:
        raise RecipeRejected("quotient", f"{name}: {exc}") from exc
