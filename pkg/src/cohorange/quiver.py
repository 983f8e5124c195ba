"""Bounded quiver algebras kQ/I with length-homogeneous admissible relations.

Path composition convention, fixed once and used everywhere in the
package: the juxtaposition p*q means "traverse p, then q".  A path
stores its arrows in traversal order, so for arrows a: x->y and b: y->z
the product a*b is the path x->z.  Left multiplication by a path u
induces the map P(u): P_{target(u)} -> P_{source(u)} between
indecomposable projectives (P_a has basis the normal-form paths with
source a).

Relations must be length-homogeneous (every path in one relation has
the same length >= 2), which makes the ideal length-graded; normal
forms are then computed by row-reducing the two-sided span of the
relations degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational_linalg import Matrix, _frac


class AlgebraError(ValueError):
    """Raised for malformed quivers, relations, or failed compilation."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite directed graph; vertex and arrow names must be unique."""

    def __init__(self, vertices, arrows):
        self.vertices = [str(v) for v in vertices]
        if not self.vertices:
            raise AlgebraError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        vset = set(self.vertices)
        self.arrows = []
        for a in arrows:
            if isinstance(a, Arrow):
                arr = a
            else:
                name, src, tgt = a
                arr = Arrow(str(name), str(src), str(tgt))
            if arr.source not in vset or arr.target not in vset:
                raise AlgebraError(f"arrow {arr.name} has unknown endpoint")
            self.arrows.append(arr)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        if set(names) & vset:
            raise AlgebraError("arrow names must not collide with vertex names")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.out_arrows = {v: [] for v in self.vertices}
        self.in_arrows = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)

    def path(self, source, arrow_names) -> "Path":
        """Build and type-check a path from a source vertex and arrow names."""
        source = str(source)
        if source not in self.out_arrows:
            raise AlgebraError(f"unknown vertex {source!r}")
        cur = source
        for name in arrow_names:
            arr = self.arrow_by_name.get(str(name))
            if arr is None:
                raise AlgebraError(f"unknown arrow {name!r}")
            if arr.source != cur:
                raise AlgebraError(
                    f"arrow {name!r} starts at {arr.source!r}, not {cur!r}"
                )
            cur = arr.target
        return Path(source, cur, tuple(str(n) for n in arrow_names))


@dataclass(frozen=True, order=True)
class Path:
    """A directed path; arrows listed in traversal order. Empty = e_source."""

    source: str
    target: str
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    def __repr__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)

    def concat(self, other: "Path") -> "Path":
        """Traverse self, then other."""
        if self.target != other.source:
            raise AlgebraError(
                f"cannot compose {self!r} (ends at {self.target}) with "
                f"{other!r} (starts at {other.source})"
            )
        return Path(self.source, other.target, self.arrows + other.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows)


class PathCombo:
    """Formal rational combination of parallel paths (same source and target)."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source, target, terms=None):
        self.source = str(source)
        self.target = str(target)
        self.terms = {}
        if terms:
            for p, c in terms.items():
                c = _frac(c)
                if c == 0:
                    continue
                if p.source != self.source or p.target != self.target:
                    raise AlgebraError(
                        f"path {p!r} is not parallel to ({self.source} -> {self.target})"
                    )
                self.terms[p] = c

    @classmethod
    def from_path(cls, path: Path, coeff=1) -> "PathCombo":
        return cls(path.source, path.target, {path: coeff})

    @classmethod
    def zero(cls, source, target) -> "PathCombo":
        return cls(source, target)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PathCombo") -> "PathCombo":
        if (self.source, self.target) != (other.source, other.target):
            raise AlgebraError("cannot add non-parallel combinations")
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, Fraction(0)) + c
        return PathCombo(self.source, self.target, terms)

    def __sub__(self, other: "PathCombo") -> "PathCombo":
        return self + other.scale(-1)

    def scale(self, c) -> "PathCombo":
        c = _frac(c)
        return PathCombo(self.source, self.target,
                         {p: c * v for p, v in self.terms.items()})

    def coeff(self, path: Path) -> Fraction:
        return self.terms.get(path, Fraction(0))

    def trivial_coeff(self) -> Fraction:
        """Coefficient of the trivial path (nonzero only when source == target)."""
        if self.source != self.target:
            return Fraction(0)
        return self.coeff(Path(self.source, self.source, ()))

    def __eq__(self, other):
        return (
            isinstance(other, PathCombo)
            and (self.source, self.target) == (other.source, other.target)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"0[{self.source}->{self.target}]"
        bits = []
        for p in sorted(self.terms, key=Path.sort_key):
            c = self.terms[p]
            bits.append(f"{c}*{p!r}" if c != 1 else repr(p))
        return " + ".join(bits)


class Algebra:
    """A compiled bounded quiver algebra kQ/I.

    Compilation enumerates all paths length-by-length up to the
    nilpotency bound N, row-reduces the two-sided span of the relations
    inside every (source, target, length) bucket, and keeps the
    non-pivot paths as the normal-form basis.  Admissibility (every
    length-N path lies in I) is verified, as is I <= R^2.
    """

    def __init__(self, quiver: Quiver, relations, nilpotency_bound=None,
                 max_paths: int = 200_000):
        self.quiver = quiver
        self.relations = list(relations)
        self._check_relations()
        if nilpotency_bound is None:
            max_rel = max((self._relation_length(r) for r in self.relations), default=1)
            nilpotency_bound = max_rel * len(quiver.vertices)
        if nilpotency_bound < 1:
            raise AlgebraError("nilpotency bound must be >= 1")
        self.nilpotency_bound = nilpotency_bound
        self.max_paths = max_paths
        self._compile()

    # -- compilation ---------------------------------------------------

    @staticmethod
    def _relation_length(rel: PathCombo) -> int:
        return len(next(iter(rel.terms)))

    def _check_relations(self):
        for rel in self.relations:
            if rel.is_zero():
                raise AlgebraError("zero relation given")
            lengths = {len(p) for p in rel.terms}
            if len(lengths) != 1:
                raise AlgebraError(
                    f"relation {rel!r} is not length-homogeneous"
                )
            ell = lengths.pop()
            if ell < 2:
                raise AlgebraError(
                    f"relation {rel!r} involves paths of length {ell} < 2 "
                    "(admissible ideals satisfy I <= R^2)"
                )
            for p in rel.terms:
                # re-walk the path against the quiver
                self.quiver.path(p.source, p.arrows)

    def _compile(self):
        n = self.nilpotency_bound
        # paths_by_len[l] = list of all paths of length l
        paths_by_len = [[Path(v, v, ()) for v in self.quiver.vertices]]
        total = len(paths_by_len[0])
        for ell in range(1, n + 1):
            nxt = []
            for p in paths_by_len[ell - 1]:
                for arr in self.quiver.out_arrows[p.target]:
                    nxt.append(Path(p.source, arr.target, p.arrows + (arr.name,)))
            total += len(nxt)
            if total > self.max_paths:
                raise AlgebraError(
                    f"path enumeration exceeded cap of {self.max_paths}; "
                    "raise max_paths or check admissibility"
                )
            paths_by_len.append(nxt)

        buckets: dict = {}
        for ell, paths in enumerate(paths_by_len):
            for p in sorted(paths, key=Path.sort_key):
                buckets.setdefault((p.source, p.target, ell), []).append(p)

        rel_by_len: dict = {}
        for rel in self.relations:
            rel_by_len.setdefault(self._relation_length(rel), []).append(rel)

        # pivot_rows[path] = {normal path: coeff} with pivot ~ -sum(coeff * normal)
        self.pivot_rows: dict = {}
        self.normal_paths_by_bucket: dict = {}
        for (s, t, ell), bucket_paths in sorted(buckets.items()):
            if ell < 2:
                self.normal_paths_by_bucket[(s, t, ell)] = list(bucket_paths)
                continue
            index = {p: i for i, p in enumerate(bucket_paths)}
            gen_rows = []
            for rl, rels in rel_by_len.items():
                if rl > ell:
                    continue
                for rel in rels:
                    rp = next(iter(rel.terms))
                    for a in range(ell - rl + 1):
                        prefixes = buckets.get((s, rp.source, a), [])
                        suffixes = buckets.get((rp.target, t, ell - rl - a), [])
                        for u in prefixes:
                            for v in suffixes:
                                row = [Fraction(0)] * len(bucket_paths)
                                for p, c in rel.terms.items():
                                    w = u.concat(p).concat(v)
                                    row[index[w]] += c
                                gen_rows.append(row)
            normals = list(bucket_paths)
            if gen_rows:
                red, pivots = Matrix.from_rows(gen_rows).rref()
                pivot_set = set(pivots)
                normals = [p for i, p in enumerate(bucket_paths) if i not in pivot_set]
                for r, pc in enumerate(pivots):
                    row = {}
                    for j, p in enumerate(bucket_paths):
                        if j != pc and red[r, j] != 0:
                            row[p] = red[r, j]
                    self.pivot_rows[bucket_paths[pc]] = row
            self.normal_paths_by_bucket[(s, t, ell)] = normals

        # admissibility: no normal paths survive at length N
        for (s, t, ell), normals in self.normal_paths_by_bucket.items():
            if ell == n and normals:
                raise AlgebraError(
                    f"not admissible with bound {n}: path {normals[0]!r} "
                    f"of length {n} does not reduce to 0"
                )

        self.normal_paths = [
            p
            for (s, t, ell), normals in sorted(self.normal_paths_by_bucket.items())
            if ell < n
            for p in normals
        ]
        self._normal_set = set(self.normal_paths)
        self._proj_basis = {
            v: sorted((p for p in self.normal_paths if p.source == v), key=Path.sort_key)
            for v in self.quiver.vertices
        }

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.normal_paths)

    def vertex(self, v) -> str:
        v = str(v)
        if v not in self.quiver.out_arrows:
            raise AlgebraError(f"unknown vertex {v!r}")
        return v

    def unit(self, v) -> PathCombo:
        v = self.vertex(v)
        return PathCombo.from_path(Path(v, v, ()))

    def path(self, source, arrow_names) -> Path:
        return self.quiver.path(source, arrow_names)

    def combo(self, source, terms) -> PathCombo:
        """Build a combo from {(arrow names tuple): coeff} rooted at source."""
        paths = {}
        target = None
        for names, c in terms.items():
            p = self.quiver.path(source, names)
            if target is None:
                target = p.target
            elif target != p.target:
                raise AlgebraError("combo paths are not parallel")
            paths[p] = paths.get(p, Fraction(0)) + _frac(c)
        if target is None:
            raise AlgebraError("empty combo needs explicit source and target")
        return PathCombo(str(source), target, paths)

    # -- normal forms ------------------------------------------------------

    def reduce(self, combo: PathCombo) -> PathCombo:
        """Normal form modulo I; linear and idempotent.

        Terms of length >= N are dropped outright: admissibility
        guarantees R^N <= I, so they already lie in the ideal.
        """
        out: dict = {}
        for p, c in combo.terms.items():
            if len(p) >= self.nilpotency_bound:
                continue
            if p in self._normal_set:
                out[p] = out.get(p, Fraction(0)) + c
                continue
            row = self.pivot_rows.get(p)
            if row is None:
                raise AlgebraError(f"path {p!r} was not enumerated at compile time")
            for q, v in row.items():
                out[q] = out.get(q, Fraction(0)) - c * v
        return PathCombo(combo.source, combo.target, out)

    def mul(self, a: PathCombo, b: PathCombo) -> PathCombo:
        """Product a*b = traverse a, then b; reduced to normal form."""
        if a.target != b.source:
            raise AlgebraError(
                f"cannot multiply combos {a!r} and {b!r}: target/source mismatch"
            )
        terms: dict = {}
        for p, cp in a.terms.items():
            for q, cq in b.terms.items():
                w = p.concat(q)
                terms[w] = terms.get(w, Fraction(0)) + cp * cq
        return self.reduce(PathCombo(a.source, b.target, terms))

    # -- projectives -------------------------------------------------------

    def proj_basis(self, a) -> list:
        """Normal-form paths with source a = basis of P_a, trivial path first."""
        return list(self._proj_basis[self.vertex(a)])

    def proj_basis_at(self, a, w) -> list:
        """Basis of P_a(w): normal paths a -> w."""
        a, w = self.vertex(a), self.vertex(w)
        return [p for p in self._proj_basis[a] if p.target == w]

    def hom_proj(self, a, b) -> list:
        """Basis of Hom(P_a, P_b): normal paths with source b, target a.

        The path u acts by left multiplication, P(u): P_a -> P_b.
        """
        a, b = self.vertex(a), self.vertex(b)
        return [p for p in self._proj_basis[b] if p.target == a]

    def path_action(self, u: PathCombo) -> dict:
        """Vertexwise matrices of left multiplication P(u): P_{t(u)} -> P_{s(u)}."""
        src, tgt = u.source, u.target
        mats = {}
        for w in self.quiver.vertices:
            cols = self.proj_basis_at(tgt, w)
            rows = self.proj_basis_at(src, w)
            row_index = {p: i for i, p in enumerate(rows)}
            entries = [Fraction(0)] * (len(rows) * len(cols))
            for j, x in enumerate(cols):
                image = self.mul(u, PathCombo.from_path(x))
                for p, c in image.terms.items():
                    entries[row_index[p] * len(cols) + j] = c
            mats[w] = Matrix(len(rows), len(cols), entries)
        return mats


# ---------------------------------------------------------------------------
# Abstract finite-dimensional algebras (structure constants) and the
# characteristic-zero radical / locality test.
# ---------------------------------------------------------------------------


class FinDimAlgebra:
    """Finite-dimensional associative unital algebra via structure constants.

    table[i][j] is the coordinate vector of b_i * b_j; identity is the
    coordinate vector of 1.  The identity law is always checked;
    associativity on all basis triples is checked unless check=False
    (used for algebras that are associative by construction).
    """

    def __init__(self, dim: int, table, identity, check: bool = True):
        self.dim = dim
        self.table = [
            [[_frac(x) for x in table[i][j]] for j in range(dim)] for i in range(dim)
        ]
        self.identity = [_frac(x) for x in identity]
        if len(self.identity) != dim:
            raise AlgebraError("identity vector has wrong length")
        for i in range(dim):
            for j in range(dim):
                if len(self.table[i][j]) != dim:
                    raise AlgebraError("structure constant vector has wrong length")
        self._check_identity()
        if check:
            self._check_associativity()

    def multiply(self, x, y):
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] += f * c
        return out

    def _check_identity(self):
        for j in range(self.dim):
            basis = [Fraction(1) if k == j else Fraction(0) for k in range(self.dim)]
            if self.multiply(self.identity, basis) != basis:
                raise AlgebraError("identity law fails on the left")
            if self.multiply(basis, self.identity) != basis:
                raise AlgebraError("identity law fails on the right")

    def _check_associativity(self):
        basis = [
            [Fraction(1) if k == j else Fraction(0) for k in range(self.dim)]
            for j in range(self.dim)
        ]
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.multiply(ij, basis[k])
                    right = self.multiply(basis[i], self.table[j][k])
                    if left != right:
                        raise AlgebraError(
                            f"associativity fails on basis triple ({i},{j},{k})"
                        )

    def left_mult_matrix(self, x) -> Matrix:
        cols = []
        for j in range(self.dim):
            basis = [Fraction(1) if k == j else Fraction(0) for k in range(self.dim)]
            cols.append(self.multiply(x, basis))
        return Matrix.from_columns(cols)

    def _trace_vector(self):
        # tr(L_{b_k}) read off the structure constants
        return [
            sum((self.table[k][j][j] for j in range(self.dim)), Fraction(0))
            for k in range(self.dim)
        ]

    def gram_matrix(self) -> Matrix:
        """Gram matrix of the trace form (x, y) -> tr(L_{x y})."""
        t = self._trace_vector()
        entries = []
        for i in range(self.dim):
            for j in range(self.dim):
                entries.append(
                    sum((self.table[i][j][k] * t[k] for k in range(self.dim)),
                        Fraction(0))
                )
        return Matrix(self.dim, self.dim, entries)

    def radical_basis(self) -> list:
        """Basis of the Jacobson radical (char 0 trace-form criterion)."""
        ns = self.gram_matrix().nullspace()
        return [ns.column(j) for j in range(ns.cols)]


def radical_and_local(e: FinDimAlgebra):
    """Radical dimension and the locality verdict dim(e/rad) == 1."""
    rad_dim = len(e.radical_basis())
    return rad_dim, (e.dim - rad_dim == 1)


def quotient_algebra(e: FinDimAlgebra, ideal_vectors):
    """Quotient of e by the span of ideal_vectors (must be a two-sided ideal).

    Returns (quotient FinDimAlgebra, project function coords -> quotient coords).
    """
    if not ideal_vectors:
        def ident(v):
            return list(v)
        return e, ident
    sub = Matrix.from_rows([[_frac(x) for x in v] for v in ideal_vectors])
    red, pivots = sub.rref()
    pivot_set = set(pivots)
    free = [j for j in range(e.dim) if j not in pivot_set]
    rows = red.to_rows()[: len(pivots)]

    def project(vec):
        v = [_frac(x) for x in vec]
        for r, pc in enumerate(pivots):
            f = v[pc]
            if f != 0:
                for j in range(e.dim):
                    v[j] -= f * rows[r][j]
        return [v[j] for j in free]

    qdim = len(free)
    lift = []
    for j in free:
        vec = [Fraction(0)] * e.dim
        vec[j] = Fraction(1)
        lift.append(vec)
    table = [[project(e.multiply(lift[i], lift[j])) for j in range(qdim)]
             for i in range(qdim)]
    quot = FinDimAlgebra(qdim, table, project(e.identity), check=False)
    return quot, project


def _minimal_polynomial(alg: FinDimAlgebra, x):
    """Monic minimal polynomial of x, low-degree coefficients first."""
    powers = [list(alg.identity)]
    while True:
        powers.append(alg.multiply(powers[-1], x))
        m = Matrix.from_columns(powers)
        ns = m.nullspace()
        if ns.cols:
            col = ns.column(0)
            # normalize so the top power has coefficient 1
            top = col[-1]
            return [c / top for c in col]


def _rational_roots(coeffs):
    """Rational roots of the polynomial with the given Fraction coefficients."""
    from math import gcd

    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) <= 1:
        return []
    lead = abs(ints[-1])
    k = 0
    while ints[k] == 0:
        k += 1
    roots = set()
    if k > 0:
        roots.add(Fraction(0))
    const = abs(ints[k])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in reversed(coeffs):
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def find_nontrivial_idempotent(alg: FinDimAlgebra):
    """Search for an idempotent e with e != 0, 1 by splitting minimal polynomials.

    For each basis element x whose minimal polynomial m has a rational
    root r with m = (t - r) g and g(r) != 0, the element g(x)/g(r) is a
    candidate; it is returned only after verifying e*e == e exactly, so
    the search is sound even when the algebra is noncommutative.
    Returns the idempotent's coordinate vector or None.
    """
    zero = [Fraction(0)] * alg.dim
    for bi in range(alg.dim):
        x = [Fraction(1) if k == bi else Fraction(0) for k in range(alg.dim)]
        m = _minimal_polynomial(alg, x)
        for r in _rational_roots(m):
            # synthetic division: m(t) = (t - r) g(t)
            g = [Fraction(0)] * (len(m) - 1)
            carry = Fraction(0)
            for d in range(len(m) - 2, -1, -1):
                carry = m[d + 1] + r * carry
                g[d] = carry
            g_at_r = Fraction(0)
            for c in reversed(g):
                g_at_r = g_at_r * r + c
            if g_at_r == 0:
                continue
            # evaluate g(x) / g(r)
            acc = [g[0] / g_at_r * c for c in alg.identity]
            power = list(alg.identity)
            for d in range(1, len(g)):
                power = alg.multiply(power, x)
                cd = g[d] / g_at_r
                acc = [a + cd * p for a, p in zip(acc, power)]
            if acc == zero or acc == alg.identity:
                continue
            if alg.multiply(acc, acc) == acc:
                return acc
    return None
