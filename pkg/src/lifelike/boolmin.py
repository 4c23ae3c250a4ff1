"""Minimal mixed-operator Boolean forms of truth tables.

Pipeline: Quine-McCluskey prime implicants -> minimum sum-of-products
cover (Petrick's method exactly, or a deterministic greedy fallback for
large instances) -> XOR extraction (Shannon parity decomposition plus
pairwise rewrites of complementary literal pairs).

Expressions are canonical: n-ary node children are sorted by a
variable-index-lexicographic key and duplicates are removed, so identical
truth tables always minimize to structurally identical trees.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .rules import TruthTable, index_to_cells, neighborhood_index

#: Variable display names for elementary (arity 3) rules.
ELEMENTARY_NAMES = ("p", "q", "r")

#: Cap on Petrick product terms before exact covering gives up.
DEFAULT_EXACT_BUDGET = 2_000


class CoverBudgetExceeded(RuntimeError):
    """Exact cover search exceeded its work budget."""


# --- expression nodes -------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    bit: int


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


@dataclass(frozen=True)
class And:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Xor:
    children: tuple["BoolExpr", ...]


BoolExpr = Union[Var, Const, Not, And, Or, Xor]


def _key_parts(expr: BoolExpr) -> tuple[tuple[int, ...], str]:
    if isinstance(expr, Var):
        return ((expr.index,), f"x{expr.index}")
    if isinstance(expr, Const):
        return ((), f"#{expr.bit}")
    if isinstance(expr, Not):
        seq, tag = _key_parts(expr.child)
        return (seq, "!" + tag)
    op = {And: "&", Or: "|", Xor: "^"}[type(expr)]
    keys = [_key_parts(c) for c in expr.children]
    seq = tuple(i for k in keys for i in k[0])
    tag = "(" + op.join(k[1] for k in keys) + ")"
    return (seq, tag)


def canonical_key(expr: BoolExpr) -> tuple:
    """Ordering key: literals before compound subtrees, then in-order
    variable indices, then a structural tag.

    Literal-first ordering keeps XOR factors at the tail of product terms,
    which is where published mixed-operator rule forms place them; the
    6-valued fold order downstream depends on it.
    """
    literal = isinstance(expr, Var) or (
        isinstance(expr, Not) and isinstance(expr.child, Var)
    )
    seq, tag = _key_parts(expr)
    return (0 if literal else 1, seq, tag)


def _sorted_children(children: Sequence[BoolExpr]) -> tuple[BoolExpr, ...]:
    seen = []
    for child in sorted(children, key=canonical_key):
        if not seen or child != seen[-1]:
            seen.append(child)
    return tuple(seen)


def make_not(child: BoolExpr) -> BoolExpr:
    if isinstance(child, Not):
        return child.child
    if isinstance(child, Const):
        return Const(1 - child.bit)
    return Not(child)


def make_and(children: Sequence[BoolExpr]) -> BoolExpr:
    flat: list[BoolExpr] = []
    for c in children:
        if isinstance(c, Const):
            if c.bit == 0:
                return Const(0)
            continue
        flat.extend(c.children if isinstance(c, And) else (c,))
    flat = list(_sorted_children(flat))
    if not flat:
        return Const(1)
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def make_or(children: Sequence[BoolExpr]) -> BoolExpr:
    flat: list[BoolExpr] = []
    for c in children:
        if isinstance(c, Const):
            if c.bit == 1:
                return Const(1)
            continue
        flat.extend(c.children if isinstance(c, Or) else (c,))
    flat = list(_sorted_children(flat))
    if not flat:
        return Const(0)
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def make_xor(children: Sequence[BoolExpr]) -> BoolExpr:
    """XOR with parity normalization: Not children and Const(1) flip a
    parity bit, duplicate pairs cancel, and an odd parity becomes a single
    enclosing Not."""
    parity = 0
    flat: list[BoolExpr] = []
    for c in children:
        if isinstance(c, Const):
            parity ^= c.bit
            continue
        if isinstance(c, Not):
            parity ^= 1
            c = c.child
        if isinstance(c, Xor):
            flat.extend(c.children)
        else:
            flat.append(c)
    flat.sort(key=canonical_key)
    dedup: list[BoolExpr] = []
    for c in flat:
        if dedup and dedup[-1] == c:
            dedup.pop()  # a ^ a = 0
        else:
            dedup.append(c)
    if not dedup:
        return Const(parity)
    core = dedup[0] if len(dedup) == 1 else Xor(tuple(dedup))
    return make_not(core) if parity else core


def eval_bool(expr: BoolExpr, assignment: Sequence[int]) -> int:
    """Standard Boolean evaluation of an expression on a bit tuple."""
    if isinstance(expr, Var):
        return assignment[expr.index]
    if isinstance(expr, Const):
        return expr.bit
    if isinstance(expr, Not):
        return 1 - eval_bool(expr.child, assignment)
    values = [eval_bool(c, assignment) for c in expr.children]
    if isinstance(expr, And):
        return int(all(values))
    if isinstance(expr, Or):
        return int(any(values))
    acc = 0
    for v in values:
        acc ^= v
    return acc


def leaf_count(expr: BoolExpr) -> int:
    """Number of variable leaves (literal count)."""
    if isinstance(expr, Var):
        return 1
    if isinstance(expr, Const):
        return 0
    if isinstance(expr, Not):
        return leaf_count(expr.child)
    return sum(leaf_count(c) for c in expr.children)


def format_expr(expr: BoolExpr, arity: int) -> str:
    """Render in the CLI grammar: `(q & !p) | (p ^ r)`.

    Elementary rules use p, q, r; larger arities use x0..x8.
    """
    names = ELEMENTARY_NAMES if arity == 3 else tuple(f"x{i}" for i in range(arity))

    def render(e: BoolExpr, parent_op: str | None) -> str:
        if isinstance(e, Var):
            return names[e.index]
        if isinstance(e, Const):
            return str(e.bit)
        if isinstance(e, Not):
            inner = render(e.child, "!")
            if not isinstance(e.child, (Var, Const)):
                inner = f"({inner})"
            return f"!{inner}"
        op = {And: " & ", Or: " | ", Xor: " ^ "}[type(e)]
        body = op.join(render(c, op) for c in e.children)
        return body if parent_op is None else f"({body})"

    return render(expr, None)


# --- implicants -------------------------------------------------------------

@dataclass(frozen=True)
class Implicant:
    """A cube over neighborhood-index bit positions.

    `mask` has a 1 on every cared-about bit; `value` fixes those bits and
    is 0 on don't-care positions. Variable j of an arity-m rule sits at
    bit position m-1-j (matching neighborhood_index).
    """

    mask: int
    value: int

    def __post_init__(self) -> None:
        if self.value & ~self.mask:
            raise ValueError("value bits must be zero on don't-care positions")

    def covers(self, minterm: int) -> bool:
        return (minterm & self.mask) == self.value

    @property
    def literal_count(self) -> int:
        return self.mask.bit_count()

    def cube_key(self, arity: int) -> tuple[int, ...]:
        """Per-variable digits 0/1/2, don't-care sorting last."""
        digits = []
        for j in range(arity):
            bit = 1 << (arity - 1 - j)
            digits.append((self.value >> (arity - 1 - j)) & 1 if self.mask & bit else 2)
        return tuple(digits)

    def to_expr(self, arity: int) -> BoolExpr:
        literals = []
        for j in range(arity):
            bit = 1 << (arity - 1 - j)
            if self.mask & bit:
                var: BoolExpr = Var(j)
                literals.append(var if self.value & bit else make_not(var))
        return make_and(literals) if literals else Const(1)

    def coverage_mask(self, arity: int) -> int:
        """Bitmask over all 2^arity minterms covered by this cube."""
        free = [arity - 1 - j for j in range(arity) if not self.mask & (1 << (arity - 1 - j))]
        cover = 0
        for combo in range(1 << len(free)):
            minterm = self.value
            for i, pos in enumerate(free):
                if (combo >> i) & 1:
                    minterm |= 1 << pos
            cover |= 1 << minterm
        return cover


def prime_implicants(tt: TruthTable) -> frozenset[Implicant]:
    """Complete prime implicant set of the on-set (Quine-McCluskey)."""
    onset = tt.onset
    if not onset:
        raise ValueError("constant-0 table has no implicants")
    full = (1 << tt.arity) - 1
    # level maps cube mask -> set of values; merge same-mask cubes whose
    # values differ in exactly one cared bit.
    level: dict[int, set[int]] = {full: set(onset)}
    primes: set[Implicant] = set()
    while level:
        nxt: dict[int, set[int]] = {}
        merged: dict[int, set[int]] = {mask: set() for mask in level}
        for mask, values in level.items():
            for value in values:
                for j in range(tt.arity):
                    bit = 1 << j
                    if not mask & bit or value & bit:
                        continue
                    if value | bit in values:
                        merged[mask].update((value, value | bit))
                        nxt.setdefault(mask & ~bit, set()).add(value)
        for mask, values in level.items():
            for value in values - merged[mask]:
                primes.add(Implicant(mask, value))
        level = nxt
    return frozenset(primes)


def _sorted_primes(primes: Sequence[Implicant], arity: int) -> list[Implicant]:
    return sorted(primes, key=lambda p: p.cube_key(arity))


def minimal_cover(
    primes: Sequence[Implicant],
    tt: TruthTable,
    mode: str = "exact",
    budget: int = DEFAULT_EXACT_BUDGET,
) -> tuple[Implicant, ...]:
    """Select a cover of tt's on-set from its prime implicants.

    mode="exact" finds a minimum-cardinality cover via Petrick's method
    (ties: fewest literals, then lexicographically smallest cube list) and
    raises CoverBudgetExceeded when the product grows past `budget`.
    mode="greedy" takes the deterministic largest-gain set cover.
    """
    arity = tt.arity
    ordered = _sorted_primes(primes, arity)
    onset_mask = 0
    for i in tt.onset:
        onset_mask |= 1 << i
    coverage = [p.coverage_mask(arity) & onset_mask for p in ordered]

    if mode == "greedy":
        chosen: list[int] = []
        uncovered = onset_mask
        while uncovered:
            best = max(range(len(ordered)), key=lambda i: (coverage[i] & uncovered).bit_count())
            if not coverage[best] & uncovered:
                raise ValueError("primes do not cover the on-set")
            chosen.append(best)
            uncovered &= ~coverage[best]
        return tuple(ordered[i] for i in sorted(chosen))
    if mode != "exact":
        raise ValueError(f"unknown cover mode {mode!r}")

    # Essential primes are forced into every cover.
    hitmap: dict[int, list[int]] = {}
    essential: set[int] = set()
    for minterm in tt.onset:
        hits = [i for i, c in enumerate(coverage) if c >> minterm & 1]
        if not hits:
            raise ValueError("primes do not cover the on-set")
        hitmap[minterm] = hits
        if len(hits) == 1:
            essential.add(hits[0])
    covered = 0
    for i in essential:
        covered |= coverage[i]
    remaining = [m for m in tt.onset if not covered >> m & 1]

    # Petrick's method on the cyclic core, run independently per connected
    # component (minterms linked through shared primes). Products are kept
    # as absorption-pruned sets of prime-index frozensets.
    chosen = set(essential)
    for component in _components(remaining, hitmap):
        products: set[frozenset[int]] = {frozenset()}
        for minterm in sorted(component, key=lambda m: len(hitmap[m])):
            expanded = {term | {i} for term in products for i in hitmap[minterm]}
            if len(expanded) > budget:
                raise CoverBudgetExceeded(f"Petrick product exceeded {budget} terms")
            products = _absorb(expanded)

        def cover_key(term: frozenset[int]) -> tuple:
            cubes = [ordered[i] for i in sorted(term)]
            return (
                len(cubes),
                sum(c.literal_count for c in cubes),
                tuple(c.cube_key(arity) for c in cubes),
            )

        chosen |= min(products, key=cover_key)
    return tuple(ordered[i] for i in sorted(chosen))


def _components(minterms: Sequence[int], hitmap: dict[int, list[int]]) -> list[list[int]]:
    """Group minterms connected through shared covering primes."""
    prime_to_minterms: dict[int, set[int]] = {}
    for m in minterms:
        for i in hitmap[m]:
            prime_to_minterms.setdefault(i, set()).add(m)
    comps: list[list[int]] = []
    seen: set[int] = set()
    for start in minterms:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for i in hitmap[cur]:
                for other in prime_to_minterms[i]:
                    if other not in comp:
                        comp.add(other)
                        stack.append(other)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def _absorb(terms: set[frozenset[int]]) -> set[frozenset[int]]:
    kept: set[frozenset[int]] = set()
    for term in sorted(terms, key=len):
        if not any(other <= term for other in kept):
            kept.add(term)
    return kept


# --- XOR extraction ---------------------------------------------------------

def _cofactor(tt: TruthTable, var: int, bit: int) -> TruthTable:
    """Sub-table with variable `var` fixed to `bit`, remaining variables
    keeping their relative order."""
    m = tt.arity
    outputs = []
    for idx in range(1 << (m - 1)):
        cells = list(index_to_cells(idx, m - 1))
        cells.insert(var, bit)
        outputs.append(tt.outputs[neighborhood_index(cells)])
    return TruthTable(m - 1, tuple(outputs))


def _remap_vars(expr: BoolExpr, removed: int) -> BoolExpr:
    """Shift variable indices >= removed up by one (undo a cofactor)."""
    if isinstance(expr, Var):
        return Var(expr.index + 1 if expr.index >= removed else expr.index)
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Not):
        return make_not(_remap_vars(expr.child, removed))
    ctor = {And: make_and, Or: make_or, Xor: make_xor}[type(expr)]
    return ctor([_remap_vars(c, removed) for c in expr.children])


@dataclass(frozen=True)
class _Term:
    """A product term: plain literals plus two-variable XOR factors."""

    literals: frozenset[tuple[int, int]]  # (variable, polarity)
    xors: frozenset[frozenset[int]]

    def key(self) -> tuple:
        return (
            tuple(sorted(self.literals)),
            tuple(sorted(tuple(sorted(g)) for g in self.xors)),
        )

    def to_expr(self) -> BoolExpr:
        factors: list[BoolExpr] = []
        for var, pol in self.literals:
            factors.append(Var(var) if pol else make_not(Var(var)))
        for group in self.xors:
            factors.append(make_xor([Var(v) for v in group]))
        return make_and(factors) if factors else Const(1)


def _try_merge(t1: _Term, t2: _Term) -> _Term | None:
    """X&a&!b | X&!a&b -> X&(a^b), or None when the pair does not match."""
    if t1.xors != t2.xors:
        return None
    only1 = t1.literals - t2.literals
    only2 = t2.literals - t1.literals
    if len(only1) != 2 or len(only2) != 2:
        return None
    if {(v, 1 - p) for v, p in only1} != only2:
        return None
    vars_ = {v for v, _ in only1}
    if len(vars_) != 2 or sorted(p for _, p in only1) != [0, 1]:
        return None
    return _Term(t1.literals & t2.literals, t1.xors | {frozenset(vars_)})


def _merge_complementary(terms: list[_Term]) -> list[_Term]:
    """Rewrite complementary-pair products into XOR factors.

    Each round takes a maximum matching of the mergeable-pair graph (a
    greedy first-fit scan strands pairs and loses XOR factors on large
    symmetric covers); rounds repeat until no pair merges. Terms are kept
    canonically sorted so the matching is deterministic.
    """
    import networkx as nx

    while True:
        terms.sort(key=_Term.key)
        graph = nx.Graph()
        graph.add_nodes_from(range(len(terms)))
        for i, j in combinations(range(len(terms)), 2):
            if _try_merge(terms[i], terms[j]) is not None:
                graph.add_edge(i, j)
        if not graph.edges:
            return terms
        matching = nx.max_weight_matching(graph, maxcardinality=True)
        matched: set[int] = set()
        merged: list[_Term] = []
        for i, j in sorted(tuple(sorted(pair)) for pair in matching):
            merged.append(_try_merge(terms[i], terms[j]))
            matched.update((i, j))
        terms = merged + [t for k, t in enumerate(terms) if k not in matched]


def xor_extract(
    tt: TruthTable,
    sop: Sequence[Implicant],
    mode: str = "auto",
    budget: int = DEFAULT_EXACT_BUDGET,
    _fallbacks: list | None = None,
) -> BoolExpr:
    """Rewrite a minimal SOP cover into a mixed-operator expression.

    In order: (a) top-down Shannon parity decomposition on the lowest
    variable x with f|x=0 == NOT(f|x=1); (b) fixpoint of pairwise rewrites
    (a & !b) | (!a & b) -> a ^ b over complementary literal pairs; (c) the
    rest stays as an Or of And terms.
    """
    m = tt.arity
    for var in range(m):
        f0 = _cofactor(tt, var, 0)
        f1 = _cofactor(tt, var, 1)
        if all(a != b for a, b in zip(f0.outputs, f1.outputs)):
            sub = _minimize(f0, mode, budget, _fallbacks)
            return make_xor([Var(var), _remap_vars(sub, var)])

    terms = []
    for imp in sop:
        literals = set()
        for j in range(m):
            bit = 1 << (m - 1 - j)
            if imp.mask & bit:
                literals.add((j, 1 if imp.value & bit else 0))
        terms.append(_Term(frozenset(literals), frozenset()))
    terms = _merge_complementary(terms)
    return make_or([t.to_expr() for t in terms])


def _minimize(
    tt: TruthTable, mode: str, budget: int, fallbacks: list | None
) -> BoolExpr:
    if not any(tt.outputs):
        return Const(0)
    if all(tt.outputs):
        return Const(1)
    primes = prime_implicants(tt)
    if mode == "auto":
        try:
            cover = minimal_cover(primes, tt, "exact", budget)
        except CoverBudgetExceeded:
            if fallbacks is not None:
                fallbacks.append(tt.arity)
            cover = minimal_cover(primes, tt, "greedy")
    else:
        cover = minimal_cover(primes, tt, mode, budget)
    return xor_extract(tt, cover, mode, budget, fallbacks)


def minimize(tt: TruthTable, mode: str = "auto", budget: int = DEFAULT_EXACT_BUDGET) -> BoolExpr:
    """Minimal mixed-operator expression of a truth table.

    mode: "exact" | "greedy" | "auto" (exact within budget, then greedy).
    """
    expr, _ = minimize_detailed(tt, mode, budget)
    return expr


def minimize_detailed(
    tt: TruthTable, mode: str = "auto", budget: int = DEFAULT_EXACT_BUDGET
) -> tuple[BoolExpr, str]:
    """Like minimize, also reporting the cover mode actually used
    ("exact" or "greedy")."""
    fallbacks: list[int] = []
    expr = _minimize(tt, mode, budget, fallbacks)
    if mode == "greedy":
        used = "greedy"
    elif mode == "exact":
        used = "exact"
    else:
        used = "greedy" if fallbacks else "exact"
    return expr, used
