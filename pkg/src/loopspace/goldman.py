"""Goldman bracket on free homotopy classes of loops on an oriented surface.

The surface is a thickened one-vertex graph: a disk with one band per
generator, attached in the cyclic order read counterclockwise around the
disk.  Free homotopy classes are cyclically reduced cyclic words in the
generators.  The bracket of two classes is a signed sum over basepoint
pairs: each transversal crossing of taut representatives contributes the
concatenated class with the sign of the crossing.

Crossing detection works on the four rays leaving a merged basepoint (both
words forward and backward).  The directions of rays that leave along the
same band are compared where the rays diverge; the counterclockwise order
at the divergence vertex, read against the dart pointing back along the
shared path, equals the order of the rays around the basepoint.  A pair of
strands that share a run of bands would be detected once per shared vertex,
so pairs whose overlap extends backward are skipped: every geometric
crossing is counted exactly once, at the visit where the overlap starts.
That skip also covers words that run along the same periodic line, which
can be made disjoint and contribute nothing.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction

__all__ = [
    "FatGraphError",
    "WordError",
    "FatGraph",
    "parse_fat_graph",
    "load_fat_graph",
    "cyclic_reduce",
    "CyclicWord",
    "goldman_bracket",
    "bracket_combo",
    "invert_classes",
    "combo_sub",
    "combo_scale",
    "random_reduced_cyclic_word",
    "jacobi_fuzz",
    "format_combo",
]


class FatGraphError(ValueError):
    """Surface description rejected."""


class WordError(ValueError):
    """Word uses letters the surface does not have."""


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_INV_SUFFIX = "^-"


class FatGraph:
    """One-vertex ribbon graph: generator names plus the counterclockwise
    cyclic order of the 2n half-edges around the vertex.

    Letters are nonzero ints: generator k (0-based) is k+1, its inverse
    -(k+1).
    """

    def __init__(self, names, order):
        names = tuple(names)
        if not names:
            raise FatGraphError("surface needs at least one generator")
        for n in names:
            if not _NAME_RE.match(n):
                raise FatGraphError(f"bad generator name {n!r}")
        if len(set(names)) != len(names):
            raise FatGraphError("duplicate generator name")
        self.names = names
        order = tuple(order)
        expected = {k for k in range(1, len(names) + 1)}
        expected |= {-k for k in expected}
        seen = set()
        for letter in order:
            if letter not in expected:
                raise FatGraphError(f"unknown half-edge {letter!r} in cyclic order")
            if letter in seen:
                raise FatGraphError(
                    f"duplicate half-edge {self.token(letter)} in cyclic order"
                )
            seen.add(letter)
        missing = sorted(expected - seen)
        if missing:
            toks = ", ".join(self.token(x) for x in missing)
            raise FatGraphError(f"cyclic order is missing half-edges: {toks}")
        self.order = order
        self.pos = {letter: k for k, letter in enumerate(order)}
        self.size = len(order)
        self._bracket_cache = {}

    def token(self, letter):
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + _INV_SUFFIX

    def letter(self, token):
        inv = token.endswith(_INV_SUFFIX)
        name = token[: -len(_INV_SUFFIX)] if inv else token
        try:
            k = self.names.index(name) + 1
        except ValueError:
            raise WordError(f"unknown generator {name!r}") from None
        return -k if inv else k

    def parse_letters(self, text):
        return tuple(self.letter(tok) for tok in text.split())

    def word(self, text):
        return CyclicWord(self, self.parse_letters(text))

    def ccw3(self, a, b, c):
        """+1 when reading counterclockwise from half-edge a meets b before
        c, else -1.  The three half-edges must be distinct."""
        pa = self.pos[a]
        ra = (self.pos[b] - pa) % self.size
        rb = (self.pos[c] - pa) % self.size
        return 1 if ra < rb else -1

    def boundary_components(self):
        """Boundary cycles of the thickened surface, as letter lists; the
        count feeds the genus bookkeeping."""
        succ = {x: self.order[(self.pos[x] + 1) % self.size] for x in self.order}
        seen = set()
        out = []
        for start in self.order:
            if start in seen:
                continue
            cycle = []
            x = start
            while x not in seen:
                seen.add(x)
                cycle.append(x)
                x = succ[-x]
            out.append(cycle)
        return out

    def genus(self):
        chi = 1 - len(self.names)
        b = len(self.boundary_components())
        return (2 - b - chi) // 2


def parse_fat_graph(text):
    names = None
    order_tokens = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "generators":
            if names is not None:
                raise FatGraphError(f"line {lineno}: second generators line")
            names = fields[1:]
            if not names:
                raise FatGraphError(f"line {lineno}: empty generators line")
        elif fields[0] == "cyclic-order":
            if order_tokens is not None:
                raise FatGraphError(f"line {lineno}: second cyclic-order line")
            order_tokens = fields[1:]
        else:
            raise FatGraphError(f"line {lineno}: unrecognized declaration {fields[0]!r}")
    if names is None:
        raise FatGraphError("missing generators line")
    if order_tokens is None:
        raise FatGraphError("missing cyclic-order line")
    stub = FatGraph.__new__(FatGraph)
    stub.names = tuple(names)
    try:
        letters = [stub.letter(tok) for tok in order_tokens]
    except WordError as e:
        raise FatGraphError(str(e)) from None
    return FatGraph(names, letters)


def load_fat_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fat_graph(fh.read())


def cyclic_reduce(letters):
    """Free reduction followed by reduction across the wraparound."""
    stack = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    while len(stack) >= 2 and stack[0] == -stack[-1]:
        stack = stack[1:-1]
    return tuple(stack)


class CyclicWord:
    """Cyclically reduced cyclic word in canonical rotation.

    Canonical means the rotation whose token sequence is lexicographically
    least; equality and hashing use that normal form.
    """

    __slots__ = ("graph", "letters")

    def __init__(self, graph, letters):
        reduced = cyclic_reduce(letters)
        if reduced:
            toks = [graph.token(x) for x in reduced]
            m = len(reduced)
            best = min(range(m), key=lambda r: toks[r:] + toks[:r])
            reduced = reduced[best:] + reduced[:best]
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "letters", reduced)

    def __setattr__(self, *_):
        raise AttributeError("CyclicWord is immutable")

    def inverse(self):
        return CyclicWord(self.graph, tuple(-x for x in reversed(self.letters)))

    def tokens(self):
        return tuple(self.graph.token(x) for x in self.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, CyclicWord)
            and self.letters == other.letters
            and self.graph.order == other.graph.order
            and self.graph.names == other.graph.names
        )

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(self.tokens())

    def __repr__(self):
        return f"CyclicWord({str(self)!r})"


def _pair_order(graph, r1, r2, start, limit):
    """Counterclockwise order of two rays that share their first ``start+1``
    letters, read at the vertex where they diverge against the dart pointing
    back along the shared path."""
    k = start + 1
    while r1(k) == r2(k):
        k += 1
        if k > limit:
            raise FatGraphError("rays fail to diverge; words are not reduced")
    return graph.ccw3(r1(k), r2(k), -r1(k - 1))


def _orient(graph, r1, r2, r3, limit):
    """Orientation (+1 counterclockwise) of three pairwise distinct rays
    leaving the basepoint."""
    off = 0
    while r1(off) == r2(off) == r3(off):
        off += 1
        if off > limit:
            raise FatGraphError("rays fail to diverge; words are not reduced")
    a, b, c = r1(off), r2(off), r3(off)
    if a != b and a != c and b != c:
        return graph.ccw3(a, b, c)
    if a == b:
        return _pair_order(graph, r1, r2, off, limit)
    if b == c:
        return _pair_order(graph, r2, r3, off, limit)
    return -_pair_order(graph, r1, r3, off, limit)


def goldman_bracket(w, v):
    """Bracket of two classes as a mapping class -> integer coefficient."""
    graph = w.graph
    if v.graph is not graph and (
        v.graph.order != graph.order or v.graph.names != graph.names
    ):
        raise WordError("words live on different surfaces")
    lw, lv = w.letters, v.letters
    key = (lw, lv)
    cached = graph._bracket_cache.get(key)
    if cached is not None:
        return dict(cached)
    m, n = len(lw), len(lv)
    acc = {}
    limit = 2 * (m + n) + 4
    for i in range(m):
        fa = lw[i]
        ba = -lw[i - 1]
        fwd_a = lambda k, i=i: lw[(i + k) % m]
        back_a = lambda k, i=i: -lw[(i - 1 - k) % m]
        for j in range(n):
            fb = lv[j]
            bb = -lv[j - 1]
            # skip visits where the strand overlap extends backward: the
            # crossing, if any, is counted where the overlap starts
            if ba == bb or ba == fb:
                continue
            fwd_b = lambda k, j=j: lv[(j + k) % n]
            back_b = lambda k, j=j: -lv[(j - 1 - k) % n]
            o1 = _orient(graph, fwd_a, fwd_b, back_a, limit)
            o2 = _orient(graph, fwd_a, back_b, back_a, limit)
            if o1 == o2:
                continue
            cls = CyclicWord(graph, lw[i:] + lw[:i] + lv[j:] + lv[:j])
            c = acc.get(cls, 0) + o1
            if c:
                acc[cls] = c
            else:
                acc.pop(cls, None)
    graph._bracket_cache[key] = dict(acc)
    return acc


def combo_scale(combo, c):
    return {k: c * v for k, v in combo.items() if c * v}


def combo_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) - v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def invert_classes(combo):
    out = {}
    for k, v in combo.items():
        kk = k.inverse()
        c = out.get(kk, 0) + v
        if c:
            out[kk] = c
        else:
            out.pop(kk, None)
    return out


def bracket_combo(a, b):
    """Bilinear extension of the bracket to integer combinations."""
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            for cls, c in goldman_bracket(wa, wb).items():
                val = out.get(cls, 0) + ca * cb * c
                if val:
                    out[cls] = val
                else:
                    out.pop(cls, None)
    return out


def format_combo(combo):
    """One ``coefficient<TAB>word`` line per class, sorted by word."""
    items = sorted(combo.items(), key=lambda kv: kv[0].tokens())
    return "".join(f"{c}\t{w}\n" for w, c in items)


def random_reduced_cyclic_word(graph, rng, max_len):
    """Uniform-ish random cyclically reduced word of length 1..max_len;
    deterministic for a given rng state."""
    n_gens = len(graph.names)
    alphabet = sorted(
        list(range(1, n_gens + 1)) + list(range(-n_gens, 0))
    )
    while True:
        n = rng.randint(1, max_len)
        letters = []
        dead = False
        for k in range(n):
            cands = list(alphabet)
            if k > 0:
                cands = [x for x in cands if x != -letters[-1]]
            if k == n - 1 and n > 1:
                cands = [x for x in cands if x != -letters[0]]
            if not cands:
                dead = True
                break
            letters.append(rng.choice(cands))
        if not dead:
            return CyclicWord(graph, tuple(letters))


def jacobi_fuzz(graph, trials=200, max_len=6, seed=1):
    """Random Jacobi identity checks [u,[v,w]] = [[u,v],w] + [v,[u,w]].

    Each trial draws its words from random.Random(f"{seed}:{trial}"), so any
    counterexample is reproducible from (seed, trial) alone.  Returns None
    when every trial balances, else a dict describing the first failure.
    """
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        u = random_reduced_cyclic_word(graph, rng, max_len)
        v = random_reduced_cyclic_word(graph, rng, max_len)
        w = random_reduced_cyclic_word(graph, rng, max_len)
        lhs = bracket_combo({u: 1}, goldman_bracket(v, w))
        rhs1 = bracket_combo(goldman_bracket(u, v), {w: 1})
        rhs2 = bracket_combo({v: 1}, goldman_bracket(u, w))
        residual = combo_sub(combo_sub(lhs, rhs1), rhs2)
        if residual:
            return {
                "trial": t,
                "u": u,
                "v": v,
                "w": w,
                "residual": residual,
            }
    return None
