"""Topological vertex amplitudes and local GW partition functions.

All q-series use the substitution q = t**2 so every amplitude is a Laurent
series in t with exact coefficients.  A TSeries knows the largest exponent
it is exact through, and arithmetic propagates that bound honestly, so a
result is never silently less precise than reported.

The principal specialization s_lambda(q^rho) is the hook product
t^(2n(lambda)+|lambda|) / prod_cells (1 - t^(2 hook)).  Skew Schur
specializations at staircases shifted down by a partition are evaluated by
the horizontal-strip chain expansion over finitely many variables.  The
vertex amplitude is

    C(lam, mu, nu) = t^(kappa(lam)+kappa(nu)) * s_nu(q^rho)
        * sum_eta s_{lam/eta}(x_i = t^(2i-1-2nu'_i))
                  s_{mu'/eta}(x_i = t^(2i-1-2nu_i))

which is cyclically symmetric in (lam, mu, nu); the public entry point
rotates the arguments to the least rotation.  Gluing over a web lists the
slots at each node counterclockwise, takes the transpose at an edge's
second node, and weights an internal edge by
(-1)^((n+1)|lam|) t^(-n kappa(lam)) Q^|lam| with n the stored framing.
These conventions are locked by the conifold product formula and the local
P2 invariants (3, -6, 27 at genus 0 and -10 at genus 1, degree 3).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import CrepantError
from .toric import DualWeb

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# Partitions

def check_partition(p) -> Partition:
    p = tuple(int(x) for x in p)
    if any(a <= 0 for a in p) or any(a < b for a, b in zip(p, p[1:])):
        raise CrepantError(f"{p} is not a partition")
    return p


def psize(p: Partition) -> int:
    return sum(p)


def transpose(p: Partition) -> Partition:
    if not p:
        return ()
    out = [0] * p[0]
    for row in p:
        for j in range(row):
            out[j] += 1
    return tuple(out)


def n_stat(p: Partition) -> int:
    """n(lambda) = sum (i-1) lambda_i over rows i >= 1."""
    return sum(i * row for i, row in enumerate(p))


def kappa(p: Partition) -> int:
    """kappa(lambda) = 2 sum_{cells} (j - i); flips sign under transpose."""
    return sum(row * (row - 2 * i - 1) for i, row in enumerate(p))


def hooks(p: Partition) -> list[int]:
    t = transpose(p)
    return [p[i] - j + t[j] - i - 1
            for i in range(len(p)) for j in range(p[i])]


def partitions_of(n: int):
    """All partitions of n, lexicographically decreasing."""
    if n == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def partitions_upto(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]


def subdiagrams(p: Partition) -> list[Partition]:
    """All partitions whose diagram fits inside the diagram of p."""
    res: set[Partition] = set()

    def rec(i, prev, acc):
        res.add(tuple(acc))
        if i == len(p):
            return
        for v in range(1, min(p[i], prev) + 1):
            rec(i + 1, v, acc + [v])

    rec(0, p[0] if p else 0, [])
    return sorted(res, key=lambda mu: (psize(mu), mu))


# ---------------------------------------------------------------------------
# Truncated Laurent series in t

class TSeries:
    """Laurent series in t, exact through exponent ``cutoff`` (None = exact)."""

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs=None, cutoff=None):
        self.cutoff = cutoff
        cc = {}
        for e, c in (coeffs or {}).items():
            if c and (cutoff is None or e <= cutoff):
                cc[int(e)] = c
        self.coeffs = cc

    @classmethod
    def zero(cls, cutoff=None):
        return cls({}, cutoff)

    @classmethod
    def one(cls, cutoff=None):
        return cls({0: 1}, cutoff)

    @classmethod
    def monomial(cls, e: int, c=1, cutoff=None):
        return cls({e: c}, cutoff)

    def valuation(self):
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @staticmethod
    def _min_cutoff(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "TSeries") -> "TSeries":
        cutoff = self._min_cutoff(self.cutoff, other.cutoff)
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return TSeries(coeffs, cutoff)

    def __neg__(self) -> "TSeries":
        return TSeries({e: -c for e, c in self.coeffs.items()}, self.cutoff)

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def __mul__(self, other: "TSeries") -> "TSeries":
        # exactness through K1+v2 and K2+v1: errors of one factor scaled by
        # the lowest term of the other
        if self.is_zero() or other.is_zero():
            cutoff = self._min_cutoff(self.cutoff, other.cutoff)
            return TSeries({}, cutoff)
        c1 = None if self.cutoff is None else self.cutoff + other.valuation()
        c2 = None if other.cutoff is None else other.cutoff + self.valuation()
        cutoff = self._min_cutoff(c1, c2)
        coeffs: dict[int, object] = {}
        for e1, a in self.coeffs.items():
            for e2, b in other.coeffs.items():
                e = e1 + e2
                if cutoff is None or e <= cutoff:
                    coeffs[e] = coeffs.get(e, 0) + a * b
        return TSeries(coeffs, cutoff)

    def scale(self, c) -> "TSeries":
        return TSeries({e: c * v for e, v in self.coeffs.items()}, self.cutoff)

    def shift(self, k: int) -> "TSeries":
        cutoff = None if self.cutoff is None else self.cutoff + k
        return TSeries({e + k: c for e, c in self.coeffs.items()}, cutoff)

    def truncate(self, cutoff: int) -> "TSeries":
        return TSeries(self.coeffs, self._min_cutoff(self.cutoff, cutoff))

    def coefficient(self, e: int):
        return self.coeffs.get(e, 0)

    def agrees_with(self, other: "TSeries", through: int) -> bool:
        if (self.cutoff is not None and self.cutoff < through) or \
                (other.cutoff is not None and other.cutoff < through):
            raise CrepantError("series not exact through the comparison order")
        exps = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(e) == other.coefficient(e)
                   for e in exps if e <= through)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __repr__(self):
        items = sorted(self.coeffs.items())[:6]
        body = " + ".join(f"{c}*t^{e}" for e, c in items)
        return f"TSeries({body or '0'}; cutoff={self.cutoff})"


def geometric(step: int, cutoff: int) -> TSeries:
    """1/(1 - t^step) as a truncated series; step must be positive."""
    if step <= 0:
        raise CrepantError("geometric step must be positive")
    return TSeries({e: 1 for e in range(0, cutoff + 1, step)}, cutoff)


def schur_principal(p, cutoff: int) -> TSeries:
    """Principal specialization of the Schur function, via hooks and contents.

    Equals t^(2 n(lambda) + |lambda|) / prod_cells (1 - t^(2 hook)).
    """
    p = check_partition(p)
    out = TSeries.monomial(2 * n_stat(p) + psize(p), 1, cutoff)
    for h in hooks(p):
        out = out * geometric(2 * h, cutoff)
    return out


@lru_cache(maxsize=None)
def _skew_spec(alpha: Partition, eta: Partition, nu: Partition,
               cutoff: int) -> TSeries:
    """Skew Schur s_{alpha/eta} at x_i = t^(2i - 1 - 2 nu_i), i = 1, 2, ...

    The first len(nu) exponents may be negative; a horizontal strip uses a
    variable at most alpha_1 times, so working through cutoff plus the total
    achievable negativity keeps the truncation exact.  Variables beyond that
    window only contribute above the cutoff.
    """
    rows = len(alpha)
    if any(e > a for e, a in zip(eta, alpha)) or len(eta) > rows:
        return TSeries.zero(cutoff)
    if not alpha:
        return TSeries.one(cutoff)
    exps = [2 * i - 1 - 2 * nu[i - 1] for i in range(1, len(nu) + 1)]
    max_neg = alpha[0] * sum(-e for e in exps if e < 0)
    work = cutoff + max_neg
    i = len(nu) + 1
    while 2 * i - 1 <= work:
        exps.append(2 * i - 1)
        i += 1
    states: dict[Partition, TSeries] = {eta: TSeries.one(work)}
    for exp in exps:
        new: dict[Partition, TSeries] = {}
        for mu, weight in states.items():
            padded = tuple(mu) + (0,) * (rows - len(mu))

            def rec(r, acc):
                if r == rows:
                    yield tuple(x for x in acc if x)
                    return
                low = padded[r]
                high = min(alpha[r], padded[r - 1] if r else alpha[0])
                for v in range(low, high + 1):
                    yield from rec(r + 1, acc + [v])

            for lam in rec(0, []):
                gained = psize(lam) - psize(mu)
                add = weight if gained == 0 else weight * TSeries.monomial(
                    exp * gained, 1, work)
                if gained and add.is_zero():
                    continue
                if lam in new:
                    new[lam] = new[lam] + add
                else:
                    new[lam] = add
        states = new
    return states.get(alpha, TSeries.zero(work)).truncate(cutoff)


@lru_cache(maxsize=None)
def vertex_raw(lam, mu, nu, cutoff: int) -> TSeries:
    """The vertex amplitude for the arguments in the given order."""
    lam, mu, nu = check_partition(lam), check_partition(mu), check_partition(nu)
    mu_t, nu_t = transpose(mu), transpose(nu)
    inner = TSeries.zero(cutoff)
    cap = tuple(min(a, b) for a, b in zip(lam, mu_t))
    for eta in subdiagrams(cap):
        inner = inner + _skew_spec(lam, eta, nu_t, cutoff) * \
            _skew_spec(mu_t, eta, nu, cutoff)
    out = schur_principal(nu, cutoff) * inner if nu else inner
    return out.shift(kappa(lam) + kappa(nu))


def vertex(lam, mu, nu, cutoff: int) -> TSeries:
    """Topological vertex amplitude, canonicalized over cyclic rotations."""
    args = [tuple(lam), tuple(mu), tuple(nu)]
    rotations = [tuple(args[i:] + args[:i]) for i in range(3)]
    lam, mu, nu = min(rotations)
    return vertex_raw(lam, mu, nu, cutoff)


# ---------------------------------------------------------------------------
# GW series: Q-graded with TSeries coefficients

class GWSeries:
    """Series in Kaehler variables, coefficients Laurent in t."""

    __slots__ = ("vars", "order", "terms")

    def __init__(self, vars, order: int, terms=None):
        self.vars = tuple(vars)
        if order < 0:
            raise CrepantError("Q-truncation must be nonnegative")
        self.order = order
        self.terms = {}
        for exps, ts in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars) or any(e < 0 for e in exps):
                raise CrepantError(f"bad exponent vector {exps}")
            if sum(exps) <= order and not ts.is_zero():
                self.terms[exps] = ts

    @classmethod
    def one(cls, vars, order: int, cutoff=None):
        vars = tuple(vars)
        return cls(vars, order, {(0,) * len(vars): TSeries.one(cutoff)})

    def coefficient(self, exps) -> TSeries:
        return self.terms.get(tuple(exps), TSeries.zero())

    def __add__(self, other: "GWSeries") -> "GWSeries":
        if self.vars != other.vars or self.order != other.order:
            raise CrepantError("GW series are incompatible")
        terms = dict(self.terms)
        for e, ts in other.terms.items():
            terms[e] = terms[e] + ts if e in terms else ts
        return GWSeries(self.vars, self.order, terms)

    def __neg__(self) -> "GWSeries":
        return GWSeries(self.vars, self.order,
                        {e: -ts for e, ts in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "GWSeries") -> "GWSeries":
        if self.vars != other.vars or self.order != other.order:
            raise CrepantError("GW series are incompatible")
        terms: dict[tuple, TSeries] = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                if sum(e1) + sum(e2) > self.order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = a * b
                terms[e] = terms[e] + prod if e in terms else prod
        return GWSeries(self.vars, self.order, terms)

    def scale(self, c) -> "GWSeries":
        return GWSeries(self.vars, self.order,
                        {e: ts.scale(c) for e, ts in self.terms.items()})

    def min_cutoff(self):
        cuts = [ts.cutoff for ts in self.terms.values()]
        if not cuts or any(c is None for c in cuts):
            return None
        return min(cuts)

    def collapse(self, weights=None, var: str = "Q") -> "GWSeries":
        """Map Q_e to Q**w_e; default weight one for every variable."""
        weights = tuple(weights) if weights is not None else (1,) * len(self.vars)
        if len(weights) != len(self.vars):
            raise CrepantError("one weight per variable required")
        terms: dict[tuple, TSeries] = {}
        for exps, ts in self.terms.items():
            e = (sum(w * x for w, x in zip(weights, exps)),)
            terms[e] = terms[e] + ts if e in terms else ts
        return GWSeries((var,), self.order, terms)

    def log(self) -> "GWSeries":
        """log of a series with constant term 1; rational t-coefficients."""
        c0 = self.coefficient((0,) * len(self.vars))
        if c0.coeffs != {0: 1}:
            raise CrepantError("log needs constant term exactly 1")
        a = GWSeries(self.vars, self.order,
                     {e: ts for e, ts in self.terms.items() if any(e)})
        out = GWSeries(self.vars, self.order)
        power = GWSeries.one(self.vars, self.order, cutoff=self.min_cutoff())
        for k in range(1, self.order + 1):
            power = power * a
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out

    def sorted_terms(self):
        rows = []
        for exps, ts in self.terms.items():
            for e, c in ts.coeffs.items():
                rows.append((exps + (e,), c))
        rows.sort(key=lambda row: (sum(row[0]), row[0]))
        return rows

    def to_text(self) -> str:
        names = " ".join(self.vars + ("t",))
        lines = [names + "\t" + str(self.order)]
        for exps, coeff in self.sorted_terms():
            if coeff != int(coeff):
                raise CrepantError("text format needs integer coefficients")
            lines.append(" ".join(str(e) for e in exps) + "\t" + str(int(coeff)))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"GWSeries(vars={self.vars}, order={self.order}, {len(self.terms)} terms)"


def _assignments(slots: int, budget: int):
    """Tuples of partition sizes, one per slot, with bounded total."""
    if slots == 0:
        yield ()
        return
    for s in range(budget + 1):
        for rest in _assignments(slots - 1, budget - s):
            yield (s,) + rest


def gw_partition_function(web: DualWeb, order: int, t_cutoff: int = 20,
                          reverse_edges: bool = False) -> GWSeries:
    """Sum over partition assignments to the internal edges of a web.

    ``order`` truncates the total Q-degree; the result's t-coefficients are
    exact at least through ``t_cutoff``.  ``reverse_edges`` evaluates with
    every edge orientation flipped (transposes and framing signs swapped),
    an independent evaluation order that must give the same series.
    """
    if not web.is_balanced():
        raise CrepantError("web is not balanced")
    edges = list(web.edges)
    qvars = tuple(e.var for e in edges)
    if not edges:
        return GWSeries.one(qvars, order, cutoff=None)

    margin = 8
    while True:
        cutoff = t_cutoff + margin
        result = _glue(web, edges, qvars, order, cutoff, reverse_edges)
        got = result.min_cutoff()
        if got is None or got >= t_cutoff:
            return result
        margin *= 2
        if margin > 16 * (t_cutoff + 8) * (order + 1) ** 2:
            raise CrepantError("cannot reach requested t-precision")


def _glue(web, edges, qvars, order, cutoff, reverse_edges):
    parts_by_size = {s: list(partitions_of(s)) for s in range(order + 1)}
    terms: dict[tuple, TSeries] = {}
    for sizes in _assignments(len(edges), order):
        for choice in _product_choices([parts_by_size[s] for s in sizes]):
            factor = TSeries.one(cutoff)
            ok = True
            for e, lam in zip(edges, choice):
                n = -e.framing if reverse_edges else e.framing
                size = psize(lam)
                sign = -1 if ((n + 1) * size) % 2 else 1
                factor = factor.scale(sign).shift(-n * kappa(lam))
            assignment = dict(zip((e.var for e in edges), choice))
            for node in range(len(web.nodes)):
                slots = _ccw_slots(web, node)
                args = []
                for kind, payload, _ in slots:
                    if kind == "leg":
                        args.append(())
                    else:
                        lam = assignment[payload.var]
                        head = payload.nodes[1] if not reverse_edges \
                            else payload.nodes[0]
                        args.append(transpose(lam) if node == head else lam)
                factor = factor * vertex(args[0], args[1], args[2], cutoff)
                if factor.is_zero():
                    ok = False
                    break
            if not ok:
                continue
            exps = tuple(psize(assignment[v]) for v in qvars)
            terms[exps] = terms[exps] + factor if exps in terms else factor
    return GWSeries(qvars, order, terms)


def _product_choices(lists):
    if not lists:
        yield ()
        return
    for first in lists[0]:
        for rest in _product_choices(lists[1:]):
            yield (first,) + rest


def _angle_key(d):
    """Total order on primitive directions by counterclockwise angle from +x."""
    x, y = d
    if y == 0:
        half = 0 if x > 0 else 2
    elif y > 0:
        half = 1
    else:
        half = 3
    # within an open half plane, compare by slope via cross product; encode
    # as a Fraction of the cotangent-like ratio for a strict order
    return (half, Fraction(-x, y) if y else Fraction(0))


def _ccw_slots(web, node):
    slots = web.slots_at(node)
    if len(slots) != 3:
        raise CrepantError("web node is not trivalent")
    return sorted(slots, key=lambda s: _angle_key(s[2]))


# ---------------------------------------------------------------------------
# Gopakumar-Vafa extraction

def _u_power(g: int) -> TSeries:
    """(t - 1/t)^(2g) as an exact Laurent polynomial."""
    u = TSeries({2: 1, 0: -2, -2: 1}, None)
    out = TSeries.one(None)
    for _ in range(g):
        out = out * u
    return out


def _cover_kernel(g: int, k: int, cutoff: int) -> TSeries:
    """(-1)^(g-1)/k * (t^k - t^-k)^(2g-2), expanded upward in t."""
    if g == 0:
        # 1/(t^k - t^-k)^2 = t^(2k) / (1 - t^(2k))^2
        base = geometric(2 * k, cutoff)
        ts = base * base
        ts = ts.shift(2 * k)
        return ts.scale(Fraction(-1, k))
    poly = TSeries({2 * k: 1, 0: -2, -2 * k: 1}, None)
    out = TSeries.one(None)
    for _ in range(g - 1):
        out = out * poly
    return out.truncate(cutoff).scale(Fraction((-1) ** (g - 1), k))


class GVTable:
    """Extracted invariants n[g, d]; entries are exact."""

    def __init__(self, entries: dict, genus_cap: int, degree_cap: int):
        self.entries = dict(entries)
        self.genus_cap = genus_cap
        self.degree_cap = degree_cap

    def __getitem__(self, key):
        return self.entries.get(tuple(key), 0)

    def rows(self):
        return sorted(self.entries.items())

    def to_text(self) -> str:
        lines = ["g d\tn"]
        for (g, d), v in self.rows():
            lines.append(f"{g} {d}\t{v}")
        return "\n".join(lines) + "\n"


def gv_extract(series: GWSeries, genus_cap: int = 2) -> GVTable:
    """Invariants from the multiple-cover resummation of log Z.

    The series must have constant term 1; multivariate series are collapsed
    to a single degree by total Q-degree first.  Raises when the t-precision
    cannot certify the requested genus range instead of truncating silently.
    """
    if len(series.vars) != 1:
        series = series.collapse()
    if not series.coefficient((0,)).coeffs == {0: 1}:
        raise CrepantError("GV extraction needs constant term exactly 1")
    free = series.log()
    entries: dict[tuple, object] = {}
    per_degree: dict[int, dict[int, object]] = {}
    for d in range(1, series.order + 1):
        residue = free.coefficient((d,))
        cutoff = residue.cutoff
        if cutoff is None:
            cutoff = 4 * genus_cap + 8
            residue = residue.truncate(cutoff)
        for k in range(2, d + 1):
            if d % k:
                continue
            for g, n in per_degree.get(d // k, {}).items():
                if n:
                    residue = residue - _cover_kernel(g, k, cutoff).scale(n)
        peeled = -(residue * _u_power(1))
        top = max((e for e, c in peeled.coeffs.items() if c), default=None)
        avail = peeled.cutoff
        if top is not None and avail is not None and top > avail - 2:
            raise CrepantError(
                f"insufficient t-precision at degree {d}: top visible exponent"
                f" {top} too close to cutoff {avail}")
        genera: dict[int, object] = {}
        if top is not None:
            if top % 2 or top < 0:
                raise CrepantError(
                    f"degree {d} free energy is not a genus expansion")
            for g in range(top // 2, -1, -1):
                c = peeled.coefficient(2 * g)
                n_g = (-1) ** g * c
                if n_g:
                    genera[g] = n_g
                    peeled = peeled - _u_power(g).scale(c)
            if any(c for e, c in peeled.coeffs.items()
                   if avail is None or e <= avail):
                raise CrepantError(
                    f"degree {d} residue is not polynomial in the genus kernel")
        per_degree[d] = genera
        for g, n in genera.items():
            if g <= genus_cap:
                n_int = int(n) if n == int(n) else n
                entries[(g, d)] = n_int
    return GVTable(entries, genus_cap, series.order)
