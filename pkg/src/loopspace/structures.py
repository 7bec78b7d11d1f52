"""Finite structure tables: graded products, brackets, and the operators
that tie them together, with exact checkers for the identities they are
supposed to satisfy.

A structure file fixes a finite graded basis and tables of structure
constants.  Omitted entries are zero; a section is present as soon as it
has one line, even a zero line.  Checkers walk every basis tuple, so a
pass is a proof for the quotient the table describes, and a failure comes
with the first offending tuple spelled out.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .coderivations import CoderivationRep

__all__ = [
    "StructureError",
    "StructureFileError",
    "BasisSpace",
    "StructureTable",
    "parse_structure_file",
    "load_structure_file",
    "CheckReport",
    "check_gerstenhaber",
    "check_bv",
    "derived_bracket",
    "string_brackets",
    "StringBracketReport",
]


class StructureError(ValueError):
    """Structure table unusable for the requested check."""


class StructureFileError(StructureError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TERM_RE = re.compile(
    r"^(?:(\d+(?:\s*/\s*\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)$"
)


def _ksign(e):
    return -1 if e % 2 else 1


def combo_add(a, b):
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, Fraction(0)) + v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def combo_scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


class BasisSpace:
    """Ordered graded basis; combos are name -> Fraction dicts."""

    def __init__(self, pairs):
        names = []
        degrees = {}
        for name, deg in pairs:
            if not _NAME_RE.match(name):
                raise StructureError(f"bad basis name {name!r}")
            if name in degrees:
                raise StructureError(f"duplicate basis name {name!r}")
            names.append(name)
            degrees[name] = deg
        self.names = tuple(names)
        self._degrees = degrees

    def degree(self, name):
        return self._degrees[name]

    def __contains__(self, name):
        return name in self._degrees

    def __len__(self):
        return len(self.names)

    def render(self, combo):
        if not combo:
            return "0"
        parts = []
        for name in self.names:
            if name not in combo:
                continue
            c = combo[name]
            mag = -c if c < 0 else c
            body = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def parse_combo(self, text, where="combination"):
        s = text.strip()
        if s == "0":
            return {}
        out = {}
        sign = Fraction(1)
        state = "start"
        for piece in re.split(r"([+-])", s):
            tok = piece.strip()
            if not tok:
                continue
            if tok in {"+", "-"}:
                if state == "after_sign":
                    raise StructureError(f"{where}: consecutive signs")
                sign = Fraction(1) if tok == "+" else Fraction(-1)
                state = "after_sign"
                continue
            m = _TERM_RE.match(tok)
            if not m:
                raise StructureError(f"{where}: cannot read term {tok!r}")
            coeff_text, name = m.groups()
            if name not in self._degrees:
                raise StructureError(f"{where}: unknown basis name {name!r}")
            coeff = Fraction(re.sub(r"\s", "", coeff_text)) if coeff_text else Fraction(1)
            c = out.get(name, Fraction(0)) + sign * coeff
            if c:
                out[name] = c
            else:
                out.pop(name, None)
            sign = Fraction(1)
            state = "after_term"
        if state == "after_sign":
            raise StructureError(f"{where}: dangling sign")
        if state == "start":
            raise StructureError(f"{where}: empty combination")
        return out


class StructureTable:
    """Loop-space basis plus whatever operator tables the file declared.

    product/bracket: (name, name) -> combo.  delta: name -> combo.
    erase maps loop combos into the marked-point space, mark goes back.
    A table that is None was never declared; an empty dict was declared
    and is identically zero.
    """

    def __init__(self, space, product=None, bracket=None, delta=None,
                 string_space=None, erase=None, mark=None):
        self.space = space
        self.product = product
        self.bracket = bracket
        self.delta = delta
        self.string_space = string_space
        self.erase = erase
        self.mark = mark

    def with_bracket(self, bracket):
        return StructureTable(
            self.space, self.product, bracket, self.delta,
            self.string_space, self.erase, self.mark,
        )

    def _pair_table(self, table, ca, cb):
        out = {}
        for x, cx in ca.items():
            for y, cy in cb.items():
                for name, v in table.get((x, y), {}).items():
                    c = out.get(name, Fraction(0)) + cx * cy * v
                    if c:
                        out[name] = c
                    else:
                        out.pop(name, None)
        return out

    def mult(self, ca, cb):
        if self.product is None:
            raise StructureError("structure has no product table")
        return self._pair_table(self.product, ca, cb)

    def bracket_of(self, ca, cb):
        if self.bracket is None:
            raise StructureError("structure has no bracket table")
        return self._pair_table(self.bracket, ca, cb)

    @staticmethod
    def _apply(table, combo):
        out = {}
        for x, cx in combo.items():
            for name, v in table.get(x, {}).items():
                c = out.get(name, Fraction(0)) + cx * v
                if c:
                    out[name] = c
                else:
                    out.pop(name, None)
        return out

    def delta_of(self, combo):
        return self._apply(self.delta or {}, combo)

    def erase_of(self, combo):
        if self.erase is None:
            raise StructureError("structure has no erasing table")
        return self._apply(self.erase, combo)

    def mark_of(self, combo):
        if self.mark is None:
            raise StructureError("structure has no marking table")
        return self._apply(self.mark, combo)


def parse_structure_file(text):
    basis_pairs = []
    sbasis_pairs = []
    op_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        kind = fields[0]
        rest = fields[1] if len(fields) > 1 else ""
        if kind in {"basis", "sbasis"}:
            parts = rest.split()
            if len(parts) != 2:
                raise StructureFileError(lineno, f"{kind} needs a name and a degree")
            name, deg_text = parts
            try:
                deg = int(deg_text)
            except ValueError:
                raise StructureFileError(lineno, f"bad degree {deg_text!r}") from None
            (basis_pairs if kind == "basis" else sbasis_pairs).append((lineno, name, deg))
        elif kind in {"product", "bracket", "delta", "E", "M"}:
            if "=" not in rest:
                raise StructureFileError(lineno, f"{kind} line needs '='")
            lhs, rhs = rest.split("=", 1)
            args = lhs.split()
            want = 2 if kind in {"product", "bracket"} else 1
            if len(args) != want:
                raise StructureFileError(
                    lineno, f"{kind} takes {want} basis name(s), got {len(args)}"
                )
            op_lines.append((lineno, kind, tuple(args), rhs.strip()))
        else:
            raise StructureFileError(lineno, f"unrecognized declaration {kind!r}")
    if not basis_pairs:
        raise StructureFileError(0, "no basis lines")
    try:
        space = BasisSpace((n, d) for _, n, d in basis_pairs)
        string_space = BasisSpace((n, d) for _, n, d in sbasis_pairs) if sbasis_pairs else None
    except StructureError as e:
        raise StructureFileError(0, str(e)) from None
    if string_space is not None:
        clash = set(space.names) & set(string_space.names)
        if clash:
            raise StructureFileError(0, f"name in both basis and sbasis: {sorted(clash)[0]}")

    tables = {"product": None, "bracket": None, "delta": None, "E": None, "M": None}
    seen_keys = {}
    for lineno, kind, args, rhs in op_lines:
        if tables[kind] is None:
            tables[kind] = {}
        arg_space = string_space if kind == "M" else space
        val_space = string_space if kind == "E" else space
        if val_space is None or arg_space is None:
            raise StructureFileError(lineno, f"{kind} line needs an sbasis")
        for a in args:
            if a not in arg_space:
                raise StructureFileError(lineno, f"unknown basis name {a!r}")
        key = args if len(args) > 1 else args[0]
        if (kind, key) in seen_keys:
            raise StructureFileError(
                lineno, f"duplicate {kind} entry for {' '.join(args)}"
            )
        seen_keys[(kind, key)] = lineno
        try:
            combo = val_space.parse_combo(rhs, where=f"{kind} {' '.join(args)}")
        except StructureError as e:
            raise StructureFileError(lineno, str(e)) from None
        if combo:
            tables[kind][key] = combo
    return StructureTable(
        space,
        product=tables["product"],
        bracket=tables["bracket"],
        delta=tables["delta"],
        string_space=string_space,
        erase=tables["E"],
        mark=tables["M"],
    )


def load_structure_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_structure_file(fh.read())


class CheckReport:
    """Ordered check outcomes; text() mirrors the CLI rendering."""

    def __init__(self, title=""):
        self.title = title
        self.lines = []

    def add(self, label, witness=None):
        self.lines.append((label, witness))
        return witness is None

    @property
    def ok(self):
        return all(w is None for _, w in self.lines)

    def failures(self):
        return [(l, w) for l, w in self.lines if w is not None]

    def text(self):
        out = []
        for label, witness in self.lines:
            if witness is None:
                out.append(f"check {label}: pass\n")
            else:
                out.append(f"check {label}: FAIL {witness}\n")
        return "".join(out)


def _pair_degree_witness(space, table, extra, op):
    for (a, b), combo in sorted(table.items()):
        want = space.degree(a) + space.degree(b) + extra
        for name in space.names:
            if name in combo and space.degree(name) != want:
                return (
                    f"{op} {a} {b}: term {name} has degree "
                    f"{space.degree(name)}, expected {want}"
                )
    return None


def _unary_degree_witness(src, tgt, table, extra, op):
    for a, combo in sorted(table.items()):
        want = src.degree(a) + extra
        for name in tgt.names:
            if name in combo and tgt.degree(name) != want:
                return (
                    f"{op} {a}: term {name} has degree "
                    f"{tgt.degree(name)}, expected {want}"
                )
    return None


def check_gerstenhaber(t):
    """Odd-bracket compatibility checks, first failure wins.

    The bracket shifts degree by one; its own grading is the shift of the
    product grading, which is where the extra signs below come from.
    """
    if t.product is None or t.bracket is None:
        raise StructureError("gerstenhaber check needs product and bracket tables")
    sp = t.space
    deg = sp.degree
    rep = CheckReport("gerstenhaber")

    if not rep.add("product respects degrees",
                   _pair_degree_witness(sp, t.product, 0, "product")):
        return rep
    if not rep.add("bracket respects degrees",
                   _pair_degree_witness(sp, t.bracket, 1, "bracket")):
        return rep

    def one(n):
        return {n: Fraction(1)}

    def comm_witness():
        for a in sp.names:
            for b in sp.names:
                lhs = t.mult(one(b), one(a))
                rhs = combo_scale(t.mult(one(a), one(b)), _ksign(deg(a) * deg(b)))
                if lhs != rhs:
                    return (f"a={a}, b={b}: b*a = {sp.render(lhs)}, "
                            f"expected {sp.render(rhs)}")
        return None

    if not rep.add("product is graded commutative", comm_witness()):
        return rep

    def assoc_witness():
        for a in sp.names:
            for b in sp.names:
                ab = t.mult(one(a), one(b))
                for c in sp.names:
                    lhs = t.mult(ab, one(c))
                    rhs = t.mult(one(a), t.mult(one(b), one(c)))
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: (a*b)*c = {sp.render(lhs)}, "
                                f"a*(b*c) = {sp.render(rhs)}")
        return None

    if not rep.add("product is associative", assoc_witness()):
        return rep

    def antisym_witness():
        for a in sp.names:
            for b in sp.names:
                lhs = t.bracket_of(one(b), one(a))
                rhs = combo_scale(
                    t.bracket_of(one(a), one(b)),
                    -_ksign((deg(a) + 1) * (deg(b) + 1)),
                )
                if lhs != rhs:
                    return (f"a={a}, b={b}: [b,a] = {sp.render(lhs)}, "
                            f"expected {sp.render(rhs)}")
        return None

    if not rep.add("bracket is graded antisymmetric", antisym_witness()):
        return rep

    def jacobi_witness():
        for a in sp.names:
            for b in sp.names:
                ab = t.bracket_of(one(a), one(b))
                s = _ksign((deg(a) + 1) * (deg(b) + 1))
                for c in sp.names:
                    lhs = t.bracket_of(one(a), t.bracket_of(one(b), one(c)))
                    rhs = combo_add(
                        t.bracket_of(ab, one(c)),
                        combo_scale(t.bracket_of(one(b), t.bracket_of(one(a), one(c))), s),
                    )
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: [a,[b,c]] = {sp.render(lhs)}, "
                                f"expected {sp.render(rhs)}")
        return None

    if not rep.add("bracket satisfies the graded Jacobi identity", jacobi_witness()):
        return rep

    def leibniz_witness():
        for a in sp.names:
            for b in sp.names:
                ab = t.bracket_of(one(a), one(b))
                s = _ksign(deg(b) * (deg(a) + 1))
                for c in sp.names:
                    lhs = t.bracket_of(one(a), t.mult(one(b), one(c)))
                    rhs = combo_add(
                        t.mult(ab, one(c)),
                        combo_scale(t.mult(one(b), t.bracket_of(one(a), one(c))), s),
                    )
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: [a,b*c] = {sp.render(lhs)}, "
                                f"expected {sp.render(rhs)}")
        return None

    rep.add("bracket is a graded derivation of the product", leibniz_witness())
    return rep


def _dev(t, a, b):
    """Deviation of delta from being a derivation, on basis names."""
    da = t.space.degree(a)
    one_a = {a: Fraction(1)}
    one_b = {b: Fraction(1)}
    s = _ksign(da)
    out = combo_scale(t.delta_of(t.mult(one_a, one_b)), s)
    out = combo_add(out, combo_scale(t.mult(t.delta_of(one_a), one_b), -s))
    out = combo_add(out, combo_scale(t.mult(one_a, t.delta_of(one_b)), -1))
    return out


def check_bv(t):
    """Second-order checks on (product, delta): delta squares to zero and
    its deviation from being a derivation is itself a derivation in both
    arguments.  The seven-term expansion states the same thing without
    naming the deviation; the final line records that the two formulations
    agree on this table.
    """
    if t.product is None or t.delta is None:
        raise StructureError("bv check needs product and delta tables")
    sp = t.space
    deg = sp.degree
    rep = CheckReport("bv")

    if not rep.add("product respects degrees",
                   _pair_degree_witness(sp, t.product, 0, "product")):
        return rep
    if not rep.add("delta respects degrees",
                   _unary_degree_witness(sp, sp, t.delta, 1, "delta")):
        return rep

    def one(n):
        return {n: Fraction(1)}

    def comm_witness():
        for a in sp.names:
            for b in sp.names:
                lhs = t.mult(one(b), one(a))
                rhs = combo_scale(t.mult(one(a), one(b)), _ksign(deg(a) * deg(b)))
                if lhs != rhs:
                    return (f"a={a}, b={b}: b*a = {sp.render(lhs)}, "
                            f"expected {sp.render(rhs)}")
        return None

    if not rep.add("product is graded commutative", comm_witness()):
        return rep

    def assoc_witness():
        for a in sp.names:
            for b in sp.names:
                ab = t.mult(one(a), one(b))
                for c in sp.names:
                    lhs = t.mult(ab, one(c))
                    rhs = t.mult(one(a), t.mult(one(b), one(c)))
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: (a*b)*c = {sp.render(lhs)}, "
                                f"a*(b*c) = {sp.render(rhs)}")
        return None

    if not rep.add("product is associative", assoc_witness()):
        return rep

    def square_witness():
        for a in sp.names:
            dd = t.delta_of(t.delta_of(one(a)))
            if dd:
                return f"a={a}: delta(delta(a)) = {sp.render(dd)}"
        return None

    if not rep.add("delta squares to zero", square_witness()):
        return rep

    def first_arg_witness():
        for a in sp.names:
            for b in sp.names:
                for c in sp.names:
                    ab = t.mult(one(a), one(b))
                    lhs = {}
                    for x, cx in ab.items():
                        lhs = combo_add(lhs, combo_scale(_dev(t, x, c), cx))
                    rhs = combo_add(
                        t.mult(one(a), _bilinear_dev(t, one(b), one(c))),
                        combo_scale(
                            t.mult(_dev(t, a, c), one(b)),
                            _ksign(deg(b) * (deg(c) + 1)),
                        ),
                    )
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: dev(a*b, c) = {sp.render(lhs)}, "
                                f"expected {sp.render(rhs)}")
        return None

    def second_arg_witness():
        for a in sp.names:
            for b in sp.names:
                for c in sp.names:
                    bc = t.mult(one(b), one(c))
                    lhs = {}
                    for x, cx in bc.items():
                        lhs = combo_add(lhs, combo_scale(_dev(t, a, x), cx))
                    rhs = combo_add(
                        t.mult(_dev(t, a, b), one(c)),
                        combo_scale(
                            t.mult(one(b), _dev(t, a, c)),
                            _ksign(deg(b) * (deg(a) + 1)),
                        ),
                    )
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: dev(a, b*c) = {sp.render(lhs)}, "
                                f"expected {sp.render(rhs)}")
        return None

    def seven_term_witness():
        for a in sp.names:
            sa = _ksign(deg(a))
            for b in sp.names:
                ab = t.mult(one(a), one(b))
                for c in sp.names:
                    abc = t.mult(ab, one(c))
                    lhs = t.delta_of(abc)
                    rhs = t.mult(t.delta_of(ab), one(c))
                    rhs = combo_add(rhs, combo_scale(
                        t.mult(one(a), t.delta_of(t.mult(one(b), one(c)))), sa))
                    rhs = combo_add(rhs, combo_scale(
                        t.mult(one(b), t.delta_of(t.mult(one(a), one(c)))),
                        _ksign((deg(a) + 1) * deg(b))))
                    rhs = combo_add(rhs, combo_scale(
                        t.mult(t.delta_of(one(a)), t.mult(one(b), one(c))), -1))
                    rhs = combo_add(rhs, combo_scale(
                        t.mult(one(a), t.mult(t.delta_of(one(b)), one(c))), -sa))
                    rhs = combo_add(rhs, combo_scale(
                        t.mult(ab, t.delta_of(one(c))),
                        -_ksign(deg(a) + deg(b))))
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: delta(a*b*c) = {sp.render(lhs)}, "
                                f"expected {sp.render(rhs)}")
        return None

    w_first = first_arg_witness()
    w_second = second_arg_witness()
    w_seven = seven_term_witness()
    rep.add("deviation is a derivation in its first argument", w_first)
    rep.add("deviation is a derivation in its second argument", w_second)
    rep.add("seven-term identity holds", w_seven)
    derivation_ok = w_first is None and w_second is None
    seven_ok = w_seven is None
    agree = None if derivation_ok == seven_ok else (
        f"derivation form {'holds' if derivation_ok else 'fails'}, "
        f"seven-term form {'holds' if seven_ok else 'fails'}"
    )
    rep.add("formulations agree", agree)
    return rep


def _bilinear_dev(t, ca, cb):
    out = {}
    for a, va in ca.items():
        for b, vb in cb.items():
            out = combo_add(out, combo_scale(_dev(t, a, b), va * vb))
    return out


def derived_bracket(t):
    """Table with the bracket replaced by the deviation of delta from
    being a derivation of the product."""
    if t.product is None or t.delta is None:
        raise StructureError("derived bracket needs product and delta tables")
    bracket = {}
    for a in t.space.names:
        for b in t.space.names:
            combo = _dev(t, a, b)
            if combo:
                bracket[(a, b)] = combo
    return t.with_bracket(bracket)


class StringBracketReport:
    """Outcome bundle: precondition and identity checks, the bracket table
    on the marked-point space, and the higher operations as coderivation
    components keyed by basis index."""

    def __init__(self, checks, bracket, reps, bracket_lines, op_lines):
        self.checks = checks
        self.bracket = bracket
        self.reps = reps
        self.bracket_lines = bracket_lines
        self.op_lines = op_lines

    @property
    def ok(self):
        return self.checks.ok

    def text(self):
        return self.checks.text() + "".join(self.bracket_lines) + "".join(self.op_lines)


def string_brackets(t, max_arity=3):
    """Bracket and higher operations induced on the marked-point space.

    Preconditions come first: every operator respects degrees, erasing a
    mark after marking gives zero, and marking after erasing is the basis
    rotation.  Only then are the operations themselves formed and tested.
    """
    if t.string_space is None or not t.string_space.names:
        raise StructureError("string bracket check needs an sbasis")
    if t.erase is None or t.mark is None:
        raise StructureError("string bracket check needs E and M tables")
    if t.product is None:
        raise StructureError("string bracket check needs a product table")
    if max_arity < 2:
        raise StructureError("max arity must be at least 2")
    sp = t.space
    ss = t.string_space
    rep = CheckReport("string brackets")

    def degree_witness():
        w = _pair_degree_witness(sp, t.product, 0, "product")
        if w is None and t.delta is not None:
            w = _unary_degree_witness(sp, sp, t.delta, 1, "delta")
        if w is None:
            w = _unary_degree_witness(sp, ss, t.erase, 0, "E")
        if w is None:
            w = _unary_degree_witness(ss, sp, t.mark, 1, "M")
        return w

    if not rep.add("structure constants respect degrees", degree_witness()):
        return StringBracketReport(rep, {}, {}, [], [])

    def one(n):
        return {n: Fraction(1)}

    def em_witness():
        for s in ss.names:
            combo = t.erase_of(t.mark_of(one(s)))
            if combo:
                return f"s={s}: E(M(s)) = {ss.render(combo)}"
        return None

    if not rep.add("mark then erase vanishes", em_witness()):
        return StringBracketReport(rep, {}, {}, [], [])

    def me_witness():
        for a in sp.names:
            lhs = t.mark_of(t.erase_of(one(a)))
            rhs = t.delta_of(one(a))
            if lhs != rhs:
                return (f"a={a}: M(E(a)) = {sp.render(lhs)}, "
                        f"delta a = {sp.render(rhs)}")
        return None

    if not rep.add("erase then mark equals delta", me_witness()):
        return StringBracketReport(rep, {}, {}, [], [])

    marked = {s: t.mark_of(one(s)) for s in ss.names}
    deg = ss.degree

    bracket = {}
    bracket_lines = []
    for s1 in ss.names:
        for s2 in ss.names:
            combo = combo_scale(
                t.erase_of(t.mult(marked[s1], marked[s2])), _ksign(deg(s1))
            )
            if combo:
                bracket[(s1, s2)] = combo
                bracket_lines.append(f"bracket {s1} {s2} = {ss.render(combo)}\n")

    def b_of(ca, cb):
        out = {}
        for x, cx in ca.items():
            for y, cy in cb.items():
                out = combo_add(out, combo_scale(bracket.get((x, y), {}), cx * cy))
        return out

    def antisym_witness():
        for a in ss.names:
            for b in ss.names:
                lhs = bracket.get((b, a), {})
                rhs = combo_scale(bracket.get((a, b), {}), -_ksign(deg(a) * deg(b)))
                if lhs != rhs:
                    return (f"a={a}, b={b}: [b,a] = {ss.render(lhs)}, "
                            f"expected {ss.render(rhs)}")
        return None

    if not rep.add("bracket is graded antisymmetric", antisym_witness()):
        return StringBracketReport(rep, bracket, {}, bracket_lines, [])

    def jacobi_witness():
        for a in ss.names:
            for b in ss.names:
                ab = bracket.get((a, b), {})
                s = _ksign(deg(a) * deg(b))
                for c in ss.names:
                    lhs = b_of(one(a), bracket.get((b, c), {}))
                    rhs = combo_add(
                        b_of(ab, one(c)),
                        combo_scale(b_of(one(b), bracket.get((a, c), {})), s),
                    )
                    if lhs != rhs:
                        return (f"a={a}, b={b}, c={c}: [a,[b,c]] = {ss.render(lhs)}, "
                                f"expected {ss.render(rhs)}")
        return None

    if not rep.add("bracket satisfies the graded Jacobi identity", jacobi_witness()):
        return StringBracketReport(rep, bracket, {}, bracket_lines, [])

    def op_value(names):
        acc = marked[names[0]]
        for s in names[1:]:
            acc = t.mult(acc, marked[s])
        return t.erase_of(acc)

    def symmetry_witness():
        # inputs carry their marked degree, one more than the file degree;
        # adjacent swaps generate all permutations, so this justifies
        # storing each operation on sorted input tuples only
        for k in range(2, max_arity + 1):
            for tup in itertools.product(ss.names, repeat=k):
                for p in range(k - 1):
                    swapped = tup[:p] + (tup[p + 1], tup[p]) + tup[p + 2:]
                    sign = _ksign((deg(tup[p]) + 1) * (deg(tup[p + 1]) + 1))
                    lhs = op_value(swapped)
                    rhs = combo_scale(op_value(tup), sign)
                    if lhs != rhs:
                        args = " ".join(swapped)
                        return (f"op({args}) = {ss.render(lhs)}, "
                                f"expected {ss.render(rhs)}")
        return None

    if not rep.add("inputs are graded symmetric", symmetry_witness()):
        return StringBracketReport(rep, bracket, {}, bracket_lines, [])

    index = {n: i for i, n in enumerate(ss.names)}
    sdegs = tuple(deg(n) + 1 for n in ss.names)
    reps = {}
    op_lines = []

    for k in range(2, max_arity + 1):
        comps = {}
        for tup in itertools.combinations_with_replacement(range(len(ss.names)), k):
            if any(
                tup[i] == tup[i + 1] and sdegs[tup[i]] % 2
                for i in range(k - 1)
            ):
                continue
            combo = op_value(tuple(ss.names[i] for i in tup))
            if combo:
                comps[tup] = {index[n]: c for n, c in combo.items()}
                names = " ".join(ss.names[i] for i in tup)
                op_lines.append(f"m{k} {names} = {ss.render(combo)}\n")
        reps[k] = CoderivationRep(sdegs, k, comps)
    return StringBracketReport(rep, bracket, reps, bracket_lines, op_lines)
