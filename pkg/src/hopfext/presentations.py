"""Presentations of graded path algebras and their degreewise realization.

A presentation is a quiver (vertices, arrows with positive degrees) plus
homogeneous relations. Realization is pure linear algebra: the degree-d
component is the span of degree-d paths modulo the degreewise span of the
two-sided ideal generated by the relations. No term orders, no normal forms.

Paths compose left to right (p then q needs target(p) = source(q)), matching
the right-module conventions used everywhere else.

The module also owns the line-oriented text format::

    # comment
    [vertices]
    v0 v1
    [arrows]
    x0 : v0 -> v1 (deg 1)
    [relations]
    x0 y1 - y0 x1
    [coaction]
    x0 -> x0 @ e(v0) + x1 @ e(v1)

Coefficients are integers or rationals like 3/2; `e(v)` names the idempotent
of vertex v; juxtaposition is path composition; `@` separates tensor legs in
coaction lines.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, MathFailure
from .graded import GradedAlgebra, GradedVectorSpace
from .linalg import Matrix, Subspace, quotient, unit_vector, zero_vector


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str
    degree: int = 1


class Path:
    """Composable arrow sequence; the empty path sits at a vertex."""

    __slots__ = ("src", "tgt", "arrows", "degree")

    def __init__(self, src, tgt, arrows, degree):
        self.src = src
        self.tgt = tgt
        self.arrows = arrows  # tuple of arrow indices
        self.degree = degree

    def __repr__(self):
        return f"Path({self.src}->{self.tgt}, {self.arrows})"


class AlgebraPresentation:
    def __init__(self, vertices, arrows, relations, coaction=None):
        self.vertices = list(vertices)
        self.arrows = list(arrows)
        self.relations = list(relations)  # each: list of (Fraction, tuple_of_arrow_names)
        self.coaction = coaction  # dict gen -> list of (coeff, a_term, h_term); see parser
        self._validate()

    def _validate(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InputError("duplicate vertex names")
        names = set()
        for a in self.arrows:
            if a.name in names or a.name in vset:
                raise InputError(f"duplicate or clashing arrow name {a.name!r}")
            names.add(a.name)
            if a.src not in vset or a.tgt not in vset:
                raise InputError(f"arrow {a.name!r} references unknown vertex")
            if a.degree < 1:
                raise InputError(f"arrow {a.name!r} must have positive degree")
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        for terms in self.relations:
            if not terms:
                raise InputError("empty relation")
            sig = None
            for coeff, path_names in terms:
                if not path_names:
                    raise InputError("relation term has an empty path")
                deg, src, tgt = self._path_signature(path_names)
                if sig is None:
                    sig = (deg, src, tgt)
                elif sig != (deg, src, tgt):
                    raise InputError(
                        f"relation {self._terms_str(terms)} is not homogeneous/composable: "
                        f"term {' '.join(path_names)} has (deg,src,tgt)={ (deg, src, tgt) }, expected {sig}")
            if sig[0] < 1:
                raise InputError("relations must have positive degree")

    def _path_signature(self, path_names):
        deg = 0
        src = tgt = None
        for nm in path_names:
            idx = self.arrow_index.get(nm)
            if idx is None:
                raise InputError(f"unknown arrow {nm!r} in relation")
            a = self.arrows[idx]
            if src is None:
                src = a.src
            elif tgt != a.src:
                raise InputError(f"path {' '.join(path_names)} is not composable at {nm!r}")
            tgt = a.tgt
            deg += a.degree
        return deg, src, tgt

    @staticmethod
    def _terms_str(terms):
        return " + ".join(f"{c}*{' '.join(p)}" for c, p in terms)


class RealizedAlgebra:
    """A presentation realized as structure constants up to a degree window.

    Keeps the path bases and quotient maps so that elements written as path
    combinations (relations, coproduct values, coactions) can be mapped into
    the canonical coordinates of each graded piece.
    """

    def __init__(self, presentation, algebra, paths, quotients):
        self.presentation = presentation
        self.algebra = algebra
        self.paths = paths          # dict degree -> list[Path]
        self.quotients = quotients  # dict degree -> QuotientSpace

    def path_class(self, d, path_idx):
        f = self.algebra.field
        q = self.quotients[d]
        return q.project(unit_vector(f, q.ambient, path_idx))

    def class_of_terms(self, terms):
        """(degree, coordinates) of a rational combination of paths."""
        f = self.algebra.field
        deg = None
        amb = None
        for coeff, path_names in terms:
            d, idx = self.locate_path(path_names)
            if deg is None:
                deg = d
                amb = zero_vector(f, self.quotients[d].ambient)
            elif d != deg:
                raise InputError("non-homogeneous path combination")
            amb[idx] = f.add(amb[idx], f.of(coeff))
        return deg, self.quotients[deg].project(amb)

    def locate_path(self, path_names):
        """Degree and index of a path given by arrow names (or a vertex name)."""
        pres = self.presentation
        if len(path_names) == 1 and path_names[0] in pres.vertices:
            for i, p in enumerate(self.paths[0]):
                if p.arrows == () and p.src == path_names[0]:
                    return 0, i
            raise InputError(f"vertex {path_names[0]!r} not found")
        idxs = tuple(pres.arrow_index[nm] for nm in path_names)
        d = sum(pres.arrows[i].degree for i in idxs)
        if d not in self.paths:
            raise InputError(f"path of degree {d} outside the realized window")
        for i, p in enumerate(self.paths[d]):
            if p.arrows == idxs:
                return d, i
        raise InputError(f"path {' '.join(path_names)} is not composable")

    def vertex_idempotent(self, vname):
        return self.path_class(0, self.presentation.vertices.index(vname))

    def generator_class(self, name):
        """Class of a single arrow, or of a vertex idempotent."""
        if name in self.presentation.vertices:
            return 0, self.vertex_idempotent(name)
        if name not in self.presentation.arrow_index:
            raise InputError(f"unknown generator {name!r}")
        return self.class_of_terms([(Fraction(1), (name,))])


def _enumerate_paths(pres, d_max):
    """Paths per degree, deterministic order (extend by arrows in declaration order)."""
    paths = {0: [Path(v, v, (), 0) for v in pres.vertices]}
    for d in range(1, d_max + 1):
        out = []
        for ai, a in enumerate(pres.arrows):
            prev = d - a.degree
            if prev < 0 or prev not in paths:
                continue
            for p in paths[prev]:
                if p.tgt == a.src:
                    out.append(Path(p.src, a.tgt, p.arrows + (ai,), d))
        paths[d] = out
    return paths


def _concat_index(paths_i, paths_j, paths_d):
    """Map (index in degree i, index in degree j) -> index in degree i+j or None."""
    lookup = {(p.src, p.arrows): k for k, p in enumerate(paths_d)}
    table = {}
    for s, p in enumerate(paths_i):
        for t, q in enumerate(paths_j):
            if p.tgt == q.src:
                table[(s, t)] = lookup[(p.src, p.arrows + q.arrows)]
    return table


def realize_presentation(pres, d_max, field=None):
    """Realize a presentation as a GradedAlgebra with window d_max >= 2.

    The degree-d ideal span is { p r q } over all relations r and composable
    path pairs (p, q) of matching degrees. If the realized dimensions vanish
    on a trailing stretch at least as long as the largest arrow degree, the
    algebra is marked complete (it is honestly finite-dimensional).
    """
    if d_max < 2:
        raise InputError("realization window must satisfy d_max >= 2")
    if field is None:
        from .fields import QQ
        field = QQ
    return _realize_over(pres, field, d_max)


def _realize_over(pres, field, d_max):
    paths = _enumerate_paths(pres, d_max)
    # relation data: (degree, src, tgt, terms as (coeff, arrow index tuple))
    rels = []
    for terms in pres.relations:
        deg, src, tgt = pres._path_signature(terms[0][1])
        rels.append((deg, src, tgt,
                     [(field.of(c), tuple(pres.arrow_index[nm] for nm in p)) for c, p in terms]))
    quotients = {}
    dims = []
    for d in range(d_max + 1):
        pd = paths[d]
        lookup = {(p.src, p.arrows): k for k, p in enumerate(pd)}
        span = []
        for (rdeg, rsrc, rtgt, terms) in rels:
            for i in range(d - rdeg + 1):
                j = d - rdeg - i
                for p in paths[i]:
                    if p.tgt != rsrc:
                        continue
                    for q in paths[j]:
                        if q.src != rtgt:
                            continue
                        vec = zero_vector(field, len(pd))
                        for coeff, mid in terms:
                            idx = lookup[(p.src, p.arrows + mid + q.arrows)]
                            vec[idx] = field.add(vec[idx], coeff)
                        span.append(vec)
        q = quotient(len(pd), Subspace(field, len(pd), span))
        quotients[d] = q
        dims.append(q.dim)
    # completeness: a zero stretch of length >= max arrow degree kills everything above
    max_arrow = max((a.degree for a in pres.arrows), default=1)
    complete = False
    cut = len(dims)
    for start in range(len(dims) - max_arrow + 1):
        if all(dims[start + k] == 0 for k in range(max_arrow)):
            complete = True
            cut = start
            break
    if complete:
        dims = dims[:cut]
        top = cut - 1
    else:
        top = d_max
    space = GradedVectorSpace(field, dims, complete=complete)
    mult = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if dims[i] == 0 or dims[j] == 0 or dims[i + j] == 0:
                continue
            qi, qj, qt = quotients[i], quotients[j], quotients[i + j]
            table = _concat_index(paths[i], paths[j], paths[i + j])
            cols = []
            for s in range(dims[i]):
                left = qi.lift(unit_vector(field, dims[i], s))
                for t in range(dims[j]):
                    right = qj.lift(unit_vector(field, dims[j], t))
                    amb = zero_vector(field, qt.ambient)
                    for si, c1 in enumerate(left):
                        if not c1:
                            continue
                        for tj, c2 in enumerate(right):
                            if not c2:
                                continue
                            k = table.get((si, tj))
                            if k is not None:
                                amb[k] = field.add(amb[k], field.mul(c1, c2))
                    cols.append(qt.project(amb))
            mult[(i, j)] = Matrix.from_columns(field, cols, nrows=dims[i + j])
    unit = zero_vector(field, dims[0])
    q0 = quotients[0]
    amb = [field.one()] * q0.ambient  # sum of all vertex idempotents
    unit = q0.project(amb)
    alg = GradedAlgebra(space, unit, mult, name="A")
    alg.validate()
    realized = RealizedAlgebra(pres, alg, paths, quotients)
    return realized


# --------------------------------------------------------------------------
# text format


def _tokenize_combination(text, lineno):
    """Split a linear combination into (sign, factor list) terms."""
    toks = text.replace("+", " + ").replace("-", " - ").split()
    terms = []
    sign = 1
    current = []
    started = False
    for tok in toks:
        if tok == "+" or tok == "-":
            if started and current:
                terms.append((sign, current))
                current = []
            elif started and not current:
                raise InputError("dangling sign", line=lineno)
            sign = 1 if tok == "+" else -1
            started = True
        else:
            current.append(tok)
            started = True
    if current:
        terms.append((sign, current))
    elif started:
        raise InputError("dangling sign", line=lineno)
    return terms


def _parse_coeff_factors(factors, lineno):
    coeff = Fraction(1)
    rest = []
    for i, tok in enumerate(factors):
        if i == 0 and (tok[0].isdigit() or "/" in tok):
            try:
                coeff = Fraction(tok)
            except ValueError:
                raise InputError(f"bad coefficient {tok!r}", line=lineno) from None
        else:
            rest.append(tok)
    return coeff, rest


def _strip_idempotent(tok):
    if tok.startswith("e(") and tok.endswith(")"):
        return tok[2:-1]
    return None


def parse_presentation(text):
    """Parse the .alg format; raises InputError with a line number on bad input."""
    vertices = []
    arrows = []
    relations = []
    coaction = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            name = line.strip("[]").strip().lower()
            if name not in ("vertices", "arrows", "relations", "coaction"):
                raise InputError(f"unknown section {name!r}", line=lineno)
            section = name
            continue
        if section == "vertices":
            vertices.extend(line.split())
        elif section == "arrows":
            # name : src -> tgt (deg d)
            try:
                name, rest = (s.strip() for s in line.split(":", 1))
                deg = 1
                if "(" in rest:
                    rest, dpart = rest.split("(", 1)
                    dpart = dpart.strip(") ").split()
                    if len(dpart) != 2 or dpart[0] != "deg":
                        raise ValueError
                    deg = int(dpart[1])
                src, tgt = (s.strip() for s in rest.split("->"))
            except ValueError:
                raise InputError(f"bad arrow line {line!r}", line=lineno) from None
            arrows.append(Arrow(name, src, tgt, deg))
        elif section == "relations":
            terms = []
            for sign, factors in _tokenize_combination(line, lineno):
                coeff, path = _parse_coeff_factors(factors, lineno)
                if not path:
                    raise InputError("relation term has no path", line=lineno)
                terms.append((sign * coeff, tuple(path)))
            relations.append(terms)
        elif section == "coaction":
            if "->" not in line:
                raise InputError("coaction line needs '->'", line=lineno)
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            gen = _strip_idempotent(lhs) or lhs
            image = []
            for sign, factors in _tokenize_combination(rhs, lineno):
                if "@" not in factors:
                    raise InputError("coaction term needs an '@' tensor separator", line=lineno)
                at = factors.index("@")
                coeff, apath = _parse_coeff_factors(factors[:at], lineno)
                hpart = factors[at + 1:]
                if len(hpart) != 1:
                    raise InputError("coaction H-leg must be a single basis name", line=lineno)
                image.append((sign * coeff, tuple(apath), hpart[0]))
            coaction[gen] = image
        else:
            raise InputError(f"content outside any section: {line!r}", line=lineno)
    if not vertices:
        raise InputError("no [vertices] section")
    try:
        return AlgebraPresentation(vertices, arrows, relations, coaction or None)
    except InputError:
        raise
    except Exception as exc:  # defensive: surface anything odd as a parse error
        raise InputError(str(exc)) from exc


def serialize_presentation(pres):
    lines = ["[vertices]", " ".join(pres.vertices), "", "[arrows]"]
    for a in pres.arrows:
        lines.append(f"{a.name} : {a.src} -> {a.tgt} (deg {a.degree})")
    lines.append("")
    lines.append("[relations]")
    for terms in pres.relations:
        parts = []
        for i, (coeff, path) in enumerate(terms):
            c = Fraction(coeff)
            sign = "-" if c < 0 else ("+" if i else "")
            mag = abs(c)
            coeff_str = "" if mag == 1 else f"{mag} "
            parts.append(f"{sign} {coeff_str}{' '.join(path)}".strip())
        lines.append(" ".join(parts))
    if pres.coaction:
        lines.append("")
        lines.append("[coaction]")
        for gen, image in pres.coaction.items():
            parts = []
            for i, (coeff, apath, hname) in enumerate(image):
                c = Fraction(coeff)
                sign = "-" if c < 0 else ("+" if i else "")
                mag = abs(c)
                coeff_str = "" if mag == 1 else f"{mag} "
                parts.append(f"{sign} {coeff_str}{' '.join(apath)} @ {hname}".strip())
            lines.append(f"{gen} -> {' '.join(parts)}")
    return "\n".join(lines) + "\n"


def parse_hopf_file(text, field):
    """Parse the .hopf format into raw structure tables.

    Returns (names, mult rows, unit vector, comul rows, counit row, antipode rows)
    ready for hopf.HopfAlgebra.
    """
    sections = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            section = line.strip("[]").strip().lower()
            if section not in ("basis", "unit", "mul", "comul", "counit", "antipode"):
                raise InputError(f"unknown section {section!r}", line=lineno)
            sections.setdefault(section, [])
            continue
        if section is None:
            raise InputError("content before any section", line=lineno)
        sections[section].append((lineno, line))
    for required in ("basis", "unit", "mul", "comul", "counit", "antipode"):
        if required not in sections:
            raise InputError(f"missing [{required}] section")
    names = []
    for _, line in sections["basis"]:
        names.extend(line.split())
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != n:
        raise InputError("duplicate basis names")

    def combo(text, lineno, scalar=False):
        vec = [field.zero()] * (1 if scalar else n)
        for sign, factors in _tokenize_combination(text, lineno):
            coeff, rest = _parse_coeff_factors(factors, lineno)
            coeff = field.of(coeff * sign)
            if scalar:
                if rest:
                    raise InputError("expected a scalar", line=lineno)
                vec[0] = field.add(vec[0], coeff)
            else:
                if len(rest) != 1 or rest[0] not in index:
                    raise InputError(f"expected a basis name, got {rest}", line=lineno)
                vec[index[rest[0]]] = field.add(vec[index[rest[0]]], coeff)
        return vec

    unit = None
    for lineno, line in sections["unit"]:
        unit = combo(line, lineno)
    if unit is None:
        raise InputError("empty [unit] section")
    mult_cols = {}
    for lineno, line in sections["mul"]:
        if "->" not in line:
            raise InputError("mul line needs '->'", line=lineno)
        lhs, rhs = line.split("->", 1)
        parts = lhs.split()
        if len(parts) != 2 or parts[0] not in index or parts[1] not in index:
            raise InputError(f"bad mul left-hand side {lhs!r}", line=lineno)
        mult_cols[(index[parts[0]], index[parts[1]])] = combo(rhs, lineno)
    mult_rows = [[field.zero()] * (n * n) for _ in range(n)]
    for (i, j), col in mult_cols.items():
        for u in range(n):
            mult_rows[u][i * n + j] = col[u]
    if len(mult_cols) != n * n:
        raise InputError("multiplication table is incomplete")

    comul_rows = [[field.zero()] * n for _ in range(n * n)]
    seen = set()
    for lineno, line in sections["comul"]:
        if "->" not in line:
            raise InputError("comul line needs '->'", line=lineno)
        lhs, rhs = line.split("->", 1)
        k = index.get(lhs.strip())
        if k is None:
            raise InputError(f"unknown basis name {lhs.strip()!r}", line=lineno)
        seen.add(k)
        for sign, factors in _tokenize_combination(rhs, lineno):
            coeff, rest = _parse_coeff_factors(factors, lineno)
            if len(rest) != 3 or rest[1] != "@":
                raise InputError("comul term must look like 'a @ b'", line=lineno)
            i, j = index.get(rest[0]), index.get(rest[2])
            if i is None or j is None:
                raise InputError("unknown basis name in comul term", line=lineno)
            c = field.of(coeff * sign)
            comul_rows[i * n + j][k] = field.add(comul_rows[i * n + j][k], c)
    if seen != set(range(n)):
        raise InputError("comultiplication table is incomplete")

    counit_row = [field.zero()] * n
    for lineno, line in sections["counit"]:
        if "->" not in line:
            raise InputError("counit line needs '->'", line=lineno)
        lhs, rhs = line.split("->", 1)
        k = index.get(lhs.strip())
        if k is None:
            raise InputError(f"unknown basis name {lhs.strip()!r}", line=lineno)
        counit_row[k] = combo(rhs, lineno, scalar=True)[0]

    antipode_rows = [[field.zero()] * n for _ in range(n)]
    seen = set()
    for lineno, line in sections["antipode"]:
        if "->" not in line:
            raise InputError("antipode line needs '->'", line=lineno)
        lhs, rhs = line.split("->", 1)
        k = index.get(lhs.strip())
        if k is None:
            raise InputError(f"unknown basis name {lhs.strip()!r}", line=lineno)
        seen.add(k)
        col = combo(rhs, lineno)
        for u in range(n):
            antipode_rows[u][k] = col[u]
    if seen != set(range(n)):
        raise InputError("antipode table is incomplete")
    return names, mult_rows, unit, comul_rows, counit_row, antipode_rows


def serialize_hopf(names, mult, unit, comul, counit, antipode, field):
    """Inverse of parse_hopf_file for structure matrices in row form."""
    n = len(names)

    def combo_str(vec):
        parts = []
        for i, c in enumerate(vec):
            if not c:
                continue
            c = Fraction(c) if field.p is None else Fraction(c)
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            coeff_str = "" if mag == 1 else f"{mag} "
            parts.append(f"{sign} {coeff_str}{names[i]}".strip())
        return " ".join(parts) if parts else "0"

    lines = ["[basis]", " ".join(names), "", "[unit]", combo_str(unit), "", "[mul]"]
    for i in range(n):
        for j in range(n):
            col = [mult[u][i * n + j] for u in range(n)]
            lines.append(f"{names[i]} {names[j]} -> {combo_str(col)}")
    lines.append("")
    lines.append("[comul]")
    for k in range(n):
        parts = []
        for i in range(n):
            for j in range(n):
                c = comul[i * n + j][k]
                if not c:
                    continue
                c = Fraction(c)
                sign = "-" if c < 0 else ("+" if parts else "")
                mag = abs(c)
                coeff_str = "" if mag == 1 else f"{mag} "
                parts.append(f"{sign} {coeff_str}{names[i]} @ {names[j]}".strip())
        lines.append(f"{names[k]} -> {' '.join(parts) if parts else '0'}")
    lines.append("")
    lines.append("[counit]")
    for k in range(n):
        c = Fraction(counit[k])
        lines.append(f"{names[k]} -> {c}")
    lines.append("")
    lines.append("[antipode]")
    for k in range(n):
        col = [antipode[u][k] for u in range(n)]
        lines.append(f"{names[k]} -> {combo_str(col)}")
    return "\n".join(lines) + "\n"
