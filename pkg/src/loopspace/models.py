"""Rational models of a simply connected space and of its loop spaces.

A minimal model is a free graded-commutative algebra on generators of degree
at least two with a decomposable degree +1 differential.  From it we build:

- the free-loop model: one extra generator per original one, a degree lower,
  with the rotation operator sending each generator to its new partner and
  the differential extended so that it anticommutes with rotation;
- the based-loop complex: the new generators alone, zero differential;
- the circle-equivariant model: the free-loop generators plus one degree-2
  class, differential d + (degree-2 class) * rotation.

The barred partner of generator ``z`` is named ``z`` + "b"; the degree-2
class is named "u".  Both names are reserved and collisions are rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .gca import AlgebraError, Derivation, GradedAlgebra, GradedElement
from .homology import (
    ChainMap,
    ChainMapError,
    CochainComplex,
    induced_map,
    verify_chain_map,
)

__all__ = [
    "ModelError",
    "ModelFileError",
    "MinimalModel",
    "parse_model",
    "load_model",
    "LoopModel",
    "loop_model",
    "based_complex",
    "EquivariantModel",
    "equivariant_model",
    "validate_model",
    "format_model_report",
    "GysinReport",
    "gysin_report",
]

BAR_SUFFIX = "b"
CIRCLE_CLASS = "u"


class ModelError(ValueError):
    """Model violates a structural requirement."""


class ModelFileError(ValueError):
    """Model file rejected; carries the offending line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MinimalModel:
    """Free graded-commutative algebra on generators of degree >= 2 with a
    square-zero degree +1 differential."""

    def __init__(self, generators, differentials=None, check=True):
        for name, deg in generators:
            if deg < 2:
                raise ModelError(
                    f"generator {name!r} has degree {deg}; the model must be "
                    "simply connected (all generators in degree 2 or higher)"
                )
        self.algebra = GradedAlgebra(generators)
        self.d = Derivation(self.algebra, 1, differentials or {}, check=check)
        if check:
            for name in self.algebra.names:
                v = self.d(self.d(self.algebra.gen(name)))
                if v:
                    raise ModelError(
                        f"differential does not square to zero at {name!r}: "
                        f"d(d({name})) = {v}"
                    )

    @property
    def complex(self):
        return CochainComplex(self.algebra, self.d, name="model")


_GEN_LINE = re.compile(r"^gen\s+(\S+)\s+(-?\d+)$")
_D_LINE = re.compile(r"^d\s+(\S+)\s*=\s*(.+)$")


def parse_model(text, check=True):
    """Parse a model file.

    Format: one declaration per line.  ``gen <name> <degree>`` introduces a
    generator; ``d <name> = <element>`` sets its differential (omitted means
    zero).  ``#`` starts a comment.  Differentials may only use generators
    already declared somewhere in the file.
    """
    gens = []
    seen = set()
    d_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _GEN_LINE.match(line)
        if m:
            name, deg = m.group(1), int(m.group(2))
            if name in seen:
                raise ModelFileError(lineno, f"duplicate generator {name!r}")
            if deg < 2:
                raise ModelFileError(
                    lineno,
                    f"generator {name!r} has degree {deg}; "
                    "generators must have degree 2 or higher",
                )
            seen.add(name)
            gens.append((name, deg))
            continue
        m = _D_LINE.match(line)
        if m:
            d_lines.append((lineno, m.group(1), m.group(2)))
            continue
        raise ModelFileError(lineno, f"unrecognized declaration: {line!r}")

    try:
        algebra = GradedAlgebra(gens)
    except AlgebraError as e:
        raise ModelFileError(0, str(e)) from e
    diffs = {}
    for lineno, name, expr in d_lines:
        if name not in seen:
            raise ModelFileError(lineno, f"differential for unknown generator {name!r}")
        if name in diffs:
            raise ModelFileError(lineno, f"duplicate differential for {name!r}")
        try:
            diffs[name] = algebra.parse(expr)
        except (AlgebraError, ValueError) as e:
            raise ModelFileError(lineno, str(e)) from e
    try:
        return MinimalModel(gens, diffs, check=check)
    except (ModelError, AlgebraError) as e:
        raise ModelError(str(e)) from e


def load_model(path, check=True):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read(), check=check)


def _bar_name(name):
    return name + BAR_SUFFIX


class LoopModel:
    """Model of the free loop space: original and barred generators, the
    extended differential, and the degree -1 rotation operator."""

    def __init__(self, algebra, d, delta, base):
        self.algebra = algebra
        self.d = d
        self.delta = delta
        self.base = base
        self.complex = CochainComplex(algebra, d, name="loop")


def loop_model(model):
    base_alg = model.algebra
    bar_names = [_bar_name(n) for n in base_alg.names]
    clash = set(bar_names) & set(base_alg.names)
    if clash:
        raise ModelError(
            f"generator names collide with barred partners: {sorted(clash)}"
        )
    gens = list(zip(base_alg.names, base_alg.degrees))
    gens += [(_bar_name(n), deg - 1) for n, deg in zip(base_alg.names, base_alg.degrees)]
    algebra = GradedAlgebra(gens)

    delta = Derivation(
        algebra, -1, {n: algebra.gen(_bar_name(n)) for n in base_alg.names}
    )
    d_values = {}
    for n in base_alg.names:
        val = base_alg.transfer(model.d(base_alg.gen(n)), algebra)
        d_values[n] = val
        d_values[_bar_name(n)] = -delta(val)
    d = Derivation(algebra, 1, d_values)
    return LoopModel(algebra, d, delta, model)


def based_complex(model):
    """Complex of the based loop space: barred generators only, zero
    differential."""
    gens = [
        (_bar_name(n), deg - 1)
        for n, deg in zip(model.algebra.names, model.algebra.degrees)
    ]
    algebra = GradedAlgebra(gens)
    return CochainComplex(algebra, Derivation(algebra, 1, {}), name="based")


class EquivariantModel:
    """Circle-equivariant model: loop generators plus the degree-2 class,
    differential d + u * rotation."""

    def __init__(self, algebra, d, loop):
        self.algebra = algebra
        self.d = d
        self.loop = loop
        self.complex = CochainComplex(algebra, d, name="string")


def equivariant_model(loop):
    loop_alg = loop.algebra
    if CIRCLE_CLASS in loop_alg.names:
        raise ModelError(
            f"generator name {CIRCLE_CLASS!r} is reserved for the degree-2 class"
        )
    gens = list(zip(loop_alg.names, loop_alg.degrees)) + [(CIRCLE_CLASS, 2)]
    algebra = GradedAlgebra(gens)
    u = algebra.gen(CIRCLE_CLASS)
    d_values = {}
    for n in loop_alg.names:
        g = loop_alg.gen(n)
        dval = loop_alg.transfer(loop.d(g), algebra)
        rval = loop_alg.transfer(loop.delta(g), algebra)
        d_values[n] = dval + rval * u
    d = Derivation(algebra, 1, d_values)
    return EquivariantModel(algebra, d, loop)


def validate_model(obj):
    """Run the structural checks on a model-like object (anything with
    ``algebra`` and ``d``; ``delta`` is checked when present).

    Returns a list of (label, ok, witness) triples; witness is None on pass.
    Checks are complete: on a free algebra an operator identity holds
    everywhere once it holds on every generator.
    """
    checks = []
    d = obj.d
    delta = getattr(obj, "delta", None)

    bad = d.check_degrees()
    checks.append(("differential respects degrees", bad is None, bad))
    if delta is not None:
        bad = delta.check_degrees()
        checks.append(("rotation respects degrees", bad is None, bad))
    if not all(ok for _, ok, _ in checks):
        return checks

    def first_violation(op):
        for name in obj.algebra.names:
            v = op(obj.algebra.gen(name))
            if v:
                return (name, v)
        return None

    w = first_violation(lambda g: d(d(g)))
    checks.append(("d squares to zero", w is None, w))
    if delta is not None:
        w = first_violation(lambda g: delta(delta(g)))
        checks.append(("rotation squares to zero", w is None, w))
        w = first_violation(lambda g: d(delta(g)) + delta(d(g)))
        checks.append(("d anticommutes with rotation", w is None, w))
    return checks


def format_model_report(obj, checks):
    """Deterministic listing: generators, nonzero differentials, nonzero
    rotation values, then one line per validation check."""
    alg = obj.algebra
    lines = [f"gen {n} {deg}" for n, deg in zip(alg.names, alg.degrees)]
    for n in alg.names:
        v = obj.d(alg.gen(n))
        if v:
            lines.append(f"d {n} = {v}")
    delta = getattr(obj, "delta", None)
    if delta is not None:
        for n in alg.names:
            v = delta(alg.gen(n))
            if v:
                lines.append(f"delta {n} = {v}")
    for label, ok, witness in checks:
        if ok:
            lines.append(f"check {label}: pass")
        else:
            detail = "; ".join(str(x) for x in witness[1:])
            lines.append(f"check {label}: FAIL at {witness[0]} -> {detail}")
    return "".join(line + "\n" for line in lines)


class GysinReport:
    """Rank table of the long exact sequence linking the equivariant and
    free-loop models, plus the two factorization verdicts."""

    def __init__(self, cutoff, rows, factor_rotation, factor_zero):
        self.cutoff = cutoff
        # rows: (degree, h_string, h_loop, rank_u, rank_restr, rank_conn, exact)
        self.rows = rows
        self.factor_rotation = factor_rotation
        self.factor_zero = factor_zero

    @property
    def ok(self):
        return (
            all(r[6] for r in self.rows)
            and all(self.factor_rotation)
            and all(self.factor_zero)
        )

    def text(self):
        out = [
            f"# long exact sequence report, degrees 0..{self.cutoff}",
            "# columns: degree, dim H(string), dim H(loop), rank of multiplication "
            "by the degree-2 class into this degree, rank of restriction, rank of "
            "the connecting map out of this degree, exactness verdict",
            "# dictionary: restriction (degree-2 class set to zero) realizes "
            "erasing the marked point, degree i -> i",
            "# dictionary: the connecting map realizes marking in all ways, "
            "degree i -> i-1; it sends the class of z to the class of rotation(z), "
            "with no extra sign",
            "# dictionary: multiplication by the degree-2 class realizes the "
            "euler-class cap, degree i-2 -> i",
            "# parity statements about even/odd dimensions are read on these "
            "cohomological degrees",
            "# degree\thString\thLoop\trank_u\trank_restr\trank_conn\texact",
        ]
        for row in self.rows:
            out.append(
                "\t".join(str(x) for x in row[:6])
                + "\t"
                + ("true" if row[6] else "false")
            )
        out.append(
            "# factorization: restriction after connecting equals the "
            "rotation-induced map: "
            + ("pass" if all(self.factor_rotation) else "FAIL")
        )
        out.append(
            "# factorization: connecting after restriction vanishes: "
            + ("pass" if all(self.factor_zero) else "FAIL")
        )
        return "".join(line + "\n" for line in out)


def gysin_report(string, cutoff):
    """Exactness and factorization report for the sequence

        ... -> H^{i-2}(string) -> H^i(string) -> H^i(loop) -> H^{i-1}(string) -> ...

    built from multiplication by the degree-2 class, restriction, and the
    connecting map.  Models are validated through generator checks first;
    chain-map conditions are verified through cutoff + 2.
    """
    loop = string.loop
    for obj, tag in ((loop, "loop model"), (string, "string model")):
        for label, ok, witness in validate_model(obj):
            if not ok:
                raise ModelError(f"{tag}: {label} fails at {witness[0]}")

    S = string.complex
    L = loop.complex
    u = string.algebra.gen(CIRCLE_CLASS)

    restr = ChainMap.from_generator_images(
        S, L, {CIRCLE_CLASS: L.algebra.zero()}, name="restriction"
    )
    mult_u = ChainMap(
        S, S, 2,
        lambda mono: u * GradedElement(S.algebra, {mono: Fraction(1)}),
        name="multiplication by the degree-2 class",
    )
    conn = ChainMap(
        L, S, -1,
        lambda mono: loop.algebra.transfer(
            loop.delta(GradedElement(L.algebra, {mono: Fraction(1)})), S.algebra
        ),
        name="connecting map",
    )
    rot = ChainMap.from_derivation(L, L, loop.delta, name="rotation")

    for f in (restr, mult_u, conn, rot):
        w = verify_chain_map(f, cutoff + 2)
        if w is not None:
            raise ChainMapError(
                f"{f.name}: chain condition fails in degree {w[0]} "
                f"on {f.src.algebra.monomial_str(w[1])}"
            )

    restr_at = {i: induced_map(restr, i) for i in range(cutoff + 2)}
    conn_at = {i: induced_map(conn, i) for i in range(cutoff + 1)}
    mult_at = {i: induced_map(mult_u, i) for i in range(cutoff - 1)}
    rot_at = {i: induced_map(rot, i) for i in range(cutoff + 1)}

    rows = []
    for i in range(cutoff + 1):
        h_s = S.betti(i)
        h_l = L.betti(i)
        rank_u = mult_at[i - 2].rank if i >= 2 else 0
        rank_restr = restr_at[i].rank
        rank_conn = conn_at[i].rank
        exact = (rank_u + rank_restr == h_s) and (rank_restr + rank_conn == h_l)
        rows.append((i, h_s, h_l, rank_u, rank_restr, rank_conn, exact))

    def compose(outer, inner):
        # explicit dimensions survive empty middle spaces
        p, q, r = outer.tgt_betti, outer.src_betti, inner.src_betti
        if inner.tgt_betti != q:
            raise ChainMapError("induced-map composition: dimension mismatch")
        return [
            [
                sum(
                    (outer.matrix[i][k] * inner.matrix[k][j] for k in range(q)),
                    Fraction(0),
                )
                for j in range(r)
            ]
            for i in range(p)
        ]

    factor_rotation = []
    factor_zero = []
    for i in range(cutoff + 1):
        if i >= 1:
            prod = compose(restr_at[i - 1], conn_at[i])
            factor_rotation.append(prod == rot_at[i].matrix)
        else:
            factor_rotation.append(rot_at[i].rank == 0)
        back = compose(conn_at[i], restr_at[i])
        factor_zero.append(all(all(c == 0 for c in row) for row in back))

    return GysinReport(cutoff, rows, factor_rotation, factor_zero)
