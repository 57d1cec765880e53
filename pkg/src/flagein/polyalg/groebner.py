"""Groebner bases by Buchberger's algorithm, with elimination and saturation.

The pair loop uses the normal selection strategy (smallest leading-term lcm
under the active order, ties by age) and prunes with the coprime and chain
criteria in Gebauer-Moeller form.  Requesting a lex basis of a
zero-dimensional ideal takes the standard fast route: a grevlex basis first,
then exact FGLM conversion.  Both routes produce the same object, the unique
reduced basis, normalized to integer-primitive generators with positive
leading coefficients, so identical inputs give bit-identical output.

A budget (pair count, coefficient bit size) turns runaway computations into a
recoverable 'budget_exceeded' status instead of a hang.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DomainError
from .poly import Exponent, MultiPoly, TermOrder, _divides, _mul_exp


@dataclass(frozen=True)
class GroebnerBudget:
    """Resource limits for a single basis computation."""

    max_pairs: int = 100_000
    max_coeff_bits: int = 1_000_000


@dataclass
class GroebnerStats:
    pairs_processed: int = 0
    pairs_discarded: int = 0
    basis_size: int = 0
    max_coeff_bits: int = 0
    conversion: str = "direct"


@dataclass
class GroebnerBasis:
    """Result of a basis computation; complete unless status says otherwise."""

    generators: list[MultiPoly]
    order: TermOrder
    status: str = "complete"
    stats: GroebnerStats = field(default_factory=GroebnerStats)

    @property
    def complete(self) -> bool:
        return self.status == "complete"


class _BudgetExceeded(Exception):
    pass


def s_polynomial(f: MultiPoly, g: MultiPoly, order: TermOrder) -> MultiPoly:
    """S(f, g) scaled to integer-friendly cross coefficients."""
    ef, cf = order.leading(f)
    eg, cg = order.leading(g)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(l - a for l, a in zip(lcm, ef))
    mg = tuple(l - b for l, b in zip(lcm, eg))
    out = {_mul_exp(e, mf): c * cg for e, c in f.terms.items()}
    for e, c in g.terms.items():
        key = _mul_exp(e, mg)
        s = out.get(key, Fraction(0)) - c * cf
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return MultiPoly(f.vars, out)


class _NegKey:
    """Inverts comparisons so heapq acts as a max-heap under the term order."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key > other.key

    def __eq__(self, other):
        return self.key == other.key


def _prepare(poly: MultiPoly, order: TermOrder):
    lead_exp, lead_coeff = order.leading(poly)
    tail = [(e, c) for e, c in poly.terms.items() if e != lead_exp]
    return lead_exp, lead_coeff, tail


def _reduce_terms(
    work: dict[Exponent, Fraction],
    reducers: list[tuple[Exponent, Fraction, list[tuple[Exponent, Fraction]]]],
    order: TermOrder,
    max_bits: int | None = None,
) -> dict[Exponent, Fraction]:
    """Full normal form of a term dict against prepared reducers.

    With *max_bits* set, coefficient growth beyond that bit size aborts the
    reduction via _BudgetExceeded; a single reduction can otherwise run far
    past any pair-level budget check.
    """
    key = order.key
    heap: list = []
    queued: set[Exponent] = set()
    remainder: dict[Exponent, Fraction] = {}

    def push(exp: Exponent):
        if exp not in queued:
            queued.add(exp)
            heapq.heappush(heap, (_NegKey(key(exp)), exp))

    for exp in work:
        push(exp)
    while heap:
        _, exp = heapq.heappop(heap)
        queued.discard(exp)
        coeff = work.get(exp)
        if not coeff:
            continue
        for lead_exp, lead_coeff, tail in reducers:
            if _divides(lead_exp, exp):
                shift = tuple(a - b for a, b in zip(exp, lead_exp))
                factor = coeff / lead_coeff
                if max_bits is not None and (
                    factor.numerator.bit_length() > max_bits
                    or factor.denominator.bit_length() > max_bits
                ):
                    raise _BudgetExceeded()
                del work[exp]
                for t_exp, t_coeff in tail:
                    target = _mul_exp(t_exp, shift)
                    s = work.get(target, Fraction(0)) - factor * t_coeff
                    if s:
                        work[target] = s
                        push(target)
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[exp] = coeff
            del work[exp]
    return remainder


def reduce_poly(poly: MultiPoly, basis: list[MultiPoly], order: TermOrder) -> MultiPoly:
    """Full multivariate division remainder of *poly* by *basis* under *order*."""
    reducers = [_prepare(g, order) for g in basis if not g.is_zero()]
    remainder = _reduce_terms(dict(poly.terms), reducers, order)
    return MultiPoly(poly.vars, remainder)


def _interreduce(polys: list[MultiPoly], order: TermOrder) -> list[MultiPoly]:
    """Reduce each generator against the others until stable; drop zeros."""
    current = [p.primitive(order) for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        current.sort(key=lambda p: order.key(order.leading(p)[0]))
        result: list[MultiPoly] = []
        for i, p in enumerate(current):
            others = result + current[i + 1:]
            r = reduce_poly(p, others, order) if others else p
            if r.is_zero():
                changed = True
                continue
            r = r.primitive(order)
            if r != p:
                changed = True
            result.append(r)
        current = result
    return sorted(current, key=lambda p: order.key(order.leading(p)[0]))


def _max_bits(poly: MultiPoly) -> int:
    return max(
        (max(c.numerator.bit_length(), c.denominator.bit_length()) for c in poly.terms.values()),
        default=0,
    )


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _buchberger_loop(
    generators: list[MultiPoly],
    order: TermOrder,
    budget: GroebnerBudget,
    stats: GroebnerStats,
) -> list[MultiPoly]:
    """Core pair loop; raises _BudgetExceeded carrying no state (caller keeps basis)."""
    variables = order.variables
    basis = _interreduce(
        [g.with_variables(variables) for g in generators if not g.with_variables(variables).is_zero()],
        order,
    )
    if not basis:
        return []
    leads = [order.leading(g)[0] for g in basis]
    reducers = [_prepare(g, order) for g in basis]

    age = 0
    queue: list = []
    alive: set[tuple[int, int]] = set()

    def push_pair(i: int, j: int):
        nonlocal age
        age += 1
        heapq.heappush(queue, (order.key(_lcm_exp(leads[i], leads[j])), age, i, j))
        alive.add((i, j))

    def update_pairs(r: int):
        """Gebauer-Moeller update for new generator index r."""
        new_lead = leads[r]
        # drop old pairs strictly covered by the new generator
        for (i, j) in list(alive):
            if j == r:
                continue
            lcm_ij = _lcm_exp(leads[i], leads[j])
            if (
                _divides(new_lead, lcm_ij)
                and _lcm_exp(leads[i], new_lead) != lcm_ij
                and _lcm_exp(leads[j], new_lead) != lcm_ij
            ):
                alive.discard((i, j))
                stats.pairs_discarded += 1
        # candidate pairs with the new generator
        taus = {i: _lcm_exp(leads[i], new_lead) for i in range(r)}
        keep: list[int] = []
        for i in range(r):
            dominated = False
            for j in range(r):
                if j == i:
                    continue
                if _divides(taus[j], taus[i]) and taus[j] != taus[i]:
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        by_tau: dict[Exponent, int] = {}
        for i in keep:
            by_tau.setdefault(taus[i], i)
        for tau, i in sorted(by_tau.items(), key=lambda kv: (order.key(kv[0]), kv[1])):
            # coprime leading terms reduce to zero; skip
            if tau == _mul_exp(leads[i], new_lead):
                stats.pairs_discarded += 1
                continue
            push_pair(i, r)

    for j in range(len(basis)):
        update_pairs(j)

    while queue:
        if stats.pairs_processed >= budget.max_pairs or stats.max_coeff_bits > budget.max_coeff_bits:
            raise _BudgetExceeded()
        _, _, i, j = heapq.heappop(queue)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        stats.pairs_processed += 1
        s_poly = s_polynomial(basis[i], basis[j], order)
        remainder = _reduce_terms(dict(s_poly.terms), reducers, order, budget.max_coeff_bits)
        if not remainder:
            continue
        new_poly = MultiPoly(variables, remainder).primitive(order)
        bits = _max_bits(new_poly)
        if bits > stats.max_coeff_bits:
            stats.max_coeff_bits = bits
        basis.append(new_poly)
        leads.append(order.leading(new_poly)[0])
        reducers.append(_prepare(new_poly, order))
        update_pairs(len(basis) - 1)

    return _interreduce(basis, order)


def _is_zero_dimensional(basis: list[MultiPoly], order: TermOrder) -> bool:
    """Every variable must have a pure power among the leading terms."""
    if not basis:
        return False
    width = len(order.variables)
    covered = [False] * width
    for g in basis:
        lead, _ = order.leading(g)
        nonzero = [i for i, e in enumerate(lead) if e]
        if len(nonzero) == 1:
            covered[nonzero[0]] = True
        elif len(nonzero) == 0:
            return True  # ideal is the whole ring
    return all(covered)


def _standard_monomials(basis: list[MultiPoly], order: TermOrder, cap: int) -> list[Exponent] | None:
    """Monomials under the staircase; None if more than *cap* of them."""
    leads = [order.leading(g)[0] for g in basis]
    width = len(order.variables)
    start = (0,) * width
    seen = {start}
    out: list[Exponent] = []
    stack = [start]
    while stack:
        exp = stack.pop()
        if any(_divides(l, exp) for l in leads):
            continue
        out.append(exp)
        if len(out) > cap:
            return None
        for i in range(width):
            up = list(exp)
            up[i] += 1
            t = tuple(up)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return out


def _fglm(
    basis: list[MultiPoly],
    from_order: TermOrder,
    to_order: TermOrder,
    stats: GroebnerStats,
) -> list[MultiPoly] | None:
    """Convert a zero-dimensional reduced basis to *to_order* by linear algebra."""
    variables = from_order.variables
    width = len(variables)
    standard = _standard_monomials(basis, from_order, cap=20_000)
    if standard is None:
        return None
    column = {m: i for i, m in enumerate(standard)}
    dim = len(standard)
    reducers = [_prepare(g, from_order) for g in basis]

    def normal_form_vector(exp: Exponent) -> list[Fraction]:
        rem = _reduce_terms({exp: Fraction(1)}, reducers, from_order)
        vec = [Fraction(0)] * dim
        for e, c in rem.items():
            vec[column[e]] = c
        return vec

    # echelon rows: pivot -> (row_vector, combination over chosen monomials)
    pivots: dict[int, tuple[list[Fraction], dict[Exponent, Fraction]]] = {}
    chosen: list[Exponent] = []
    new_leads: list[Exponent] = []
    out: list[MultiPoly] = []

    def eliminated(vec: list[Fraction], combo: dict[Exponent, Fraction]):
        for p, (row, row_combo) in sorted(pivots.items()):
            if vec[p]:
                f = vec[p] / row[p]
                for k in range(dim):
                    if row[k]:
                        vec[k] -= f * row[k]
                for m, c in row_combo.items():
                    s = combo.get(m, Fraction(0)) - f * c
                    if s:
                        combo[m] = s
                    else:
                        combo.pop(m, None)
        return vec, combo

    heap: list = []
    queued = set()

    def push(exp: Exponent):
        if exp not in queued:
            queued.add(exp)
            heapq.heappush(heap, (to_order.key(exp), exp))

    push((0,) * width)
    while heap:
        _, exp = heapq.heappop(heap)
        if any(_divides(l, exp) for l in new_leads):
            continue
        vec = normal_form_vector(exp)
        combo: dict[Exponent, Fraction] = {}
        vec, combo = eliminated(vec, combo)
        pivot = next((k for k in range(dim) if vec[k]), None)
        if pivot is None:
            # exp is a new leading term: exp - sum combo over chosen monomials
            terms = {exp: Fraction(1)}
            for m, c in combo.items():
                terms[m] = terms.get(m, Fraction(0)) + c
            poly = MultiPoly(variables, terms)
            out.append(poly)
            new_leads.append(exp)
        else:
            combo[exp] = combo.get(exp, Fraction(0)) + 1
            pivots[pivot] = (vec, combo)
            chosen.append(exp)
            if len(chosen) > dim:
                raise DomainError("FGLM dimension overflow; ideal not zero-dimensional")
            for i in range(width):
                up = list(exp)
                up[i] += 1
                push(tuple(up))
    stats.conversion = "grevlex+fglm"
    return _interreduce(out, to_order)


def buchberger(
    generators: list[MultiPoly],
    order: TermOrder,
    budget: GroebnerBudget | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by *generators*.

    For a lex target the computation first builds a grevlex basis; when that
    shows the ideal is zero-dimensional the lex basis is obtained by FGLM
    conversion, otherwise the pair loop runs directly under lex.  Either way
    the result is the unique reduced lex basis.
    """
    if not generators:
        raise DomainError("empty generator list")
    budget = budget or GroebnerBudget()
    stats = GroebnerStats()
    variables = order.variables
    try:
        if order.kind == "lex" and len(variables) > 1:
            grevlex = TermOrder("grevlex", variables)
            pre_stats = GroebnerStats()
            try:
                warm = _buchberger_loop(generators, grevlex, budget, pre_stats)
            except _BudgetExceeded:
                warm = None
            if warm is not None:
                stats.pairs_processed = pre_stats.pairs_processed
                stats.pairs_discarded = pre_stats.pairs_discarded
                stats.max_coeff_bits = pre_stats.max_coeff_bits
                if _is_zero_dimensional(warm, grevlex):
                    converted = _fglm(warm, grevlex, order, stats)
                    if converted is not None:
                        final = [p.primitive(order) for p in converted]
                        stats.basis_size = len(final)
                        return GroebnerBasis(final, order, "complete", stats)
                # fall through: direct lex run seeded with the grevlex basis
                generators = warm
        final = _buchberger_loop(generators, order, budget, stats)
    except _BudgetExceeded:
        return GroebnerBasis([], order, "budget_exceeded", stats)
    stats.basis_size = len(final)
    return GroebnerBasis(final, order, "complete", stats)


def _fresh_variable(used: tuple[str, ...]) -> str:
    if "t" not in used:
        return "t"
    n = 0
    while f"t{n}" in used:
        n += 1
    return f"t{n}"


def saturate(
    generators: list[MultiPoly],
    nonvanishing: list[MultiPoly],
    budget: GroebnerBudget | None = None,
) -> GroebnerBasis:
    """Basis of the ideal saturated by the product of *nonvanishing*.

    Adds t * product - 1 for a fresh auxiliary variable t, computes a lex
    basis with t eliminated first, and keeps the t-free generators.  Because
    the remaining variables keep their given order, the result is itself a
    lex basis of the saturation ideal.
    """
    if not generators:
        raise DomainError("empty generator list")
    variables = generators[0].vars
    order = TermOrder("lex", variables)
    if not nonvanishing:
        return buchberger(generators, order, budget)
    aux = _fresh_variable(variables)
    extended = (aux,) + tuple(variables)
    product = MultiPoly.constant(1, extended)
    for c in nonvanishing:
        product = product * c.with_variables(extended)
    if product.is_constant():
        if product.constant_value() == 0:
            raise DomainError("saturation by zero")
        return buchberger(generators, order, budget)
    trick = MultiPoly.variable(aux, extended) * product - MultiPoly.constant(1, extended)
    lifted = [g.with_variables(extended) for g in generators] + [trick]
    result = buchberger(lifted, TermOrder("lex", extended), budget)
    if not result.complete:
        return GroebnerBasis([], order, result.status, result.stats)
    kept = [
        g.with_variables(variables).primitive(order)
        for g in result.generators
        if all(exp[0] == 0 for exp in g.terms)
    ]
    return GroebnerBasis(kept, order, "complete", result.stats)
