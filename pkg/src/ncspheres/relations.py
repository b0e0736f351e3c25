"""Monomial relation systems over the ten spheres and their rewriting engine.

Words are sequences of letters ``(block, star)``: letters sharing a block
carry the same abstract coordinate index, distinct blocks carry distinct
indices, and ``star`` marks the adjoint symbol (always off in the real
case, where coordinates are self-adjoint).  A permutation ``sigma``
induces, over a regime (field plus twist), the family of relations

    a_{i_1} ... a_{i_k} = sign(sigma, ker i) a_{i_sigma(1)} ... a_{i_sigma(k)}

one per coincidence pattern of the indices, with the sign forced by
anticommutation: ``-1`` to the number of inverted position pairs lying in
distinct blocks (a starred symbol commutes with the plain symbol of the
same index).

The engine closes a relation set under segment rewriting, transitivity and
contraction of a summed adjacent conjugate pair against the quadratic
sphere relation.  Same-degree consequences are explored by a signed
breadth-first search inside each content class; a contraction derives a
lower-degree relation from a witness pair carrying the summed index,
provided every coincidence instance of the witness is derivable with the
same sign.  Soundness is one-directional by construction: a derived
relation holds in every model of the base system, and a zero result of
``reduce`` is a proof, while "not derivable" is only bound-relative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import SizeLimitError
from .partitions import Partition, halfcommuting_membership
from .partitions import _set_partitions as _position_partitions
from .weingarten import Field, GroupSpec, Level, SphereSpec

Letter = tuple[int, bool]
Word = tuple[Letter, ...]

DEFAULT_MAX_DEGREE = 6
DEFAULT_MAX_INDICES = 4


# ---------------------------------------------------------------------------
# words and combinations


@dataclass(frozen=True)
class PatternWord:
    """A monomial pattern: letters over abstract indices, with an optional
    set of index blocks summed over 1..N."""

    letters: Word
    summed: frozenset[int] = frozenset()

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def kernel(self) -> tuple[int, ...]:
        """Block label per position, numbered by first occurrence."""
        rename: dict[int, int] = {}
        out = []
        for b, _ in self.letters:
            rename.setdefault(b, len(rename))
            out.append(rename[b])
        return tuple(out)

    @property
    def exponents(self) -> tuple[str, ...]:
        return tuple("*" if s else "1" for _, s in self.letters)

    def literal(self) -> str:
        letters = "abcdefghijklmnopqrstuvwxyz"
        out = []
        for b, s in self.letters:
            out.append(letters[b] + ("*" if s else ""))
        return "".join(out)

    def __str__(self) -> str:
        return self.literal()


def parse_word(text: str) -> PatternWord:
    """Parse a word literal such as ``"ab*a"`` (a, b-star, a).

    The letter fixes the abstract index block ('a' is block 0, 'b' block 1
    and so on), so words parsed separately share one index frame: ``"ab"``
    and ``"ba"`` are the two different orderings of the same two indices.
    """
    letters: list[Letter] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if not ch.isalpha() or not ch.islower():
            raise ValueError(f"bad word literal {text!r}")
        star = i + 1 < len(text) and text[i + 1] == "*"
        letters.append((ord(ch) - ord("a"), star))
        i += 2 if star else 1
    return PatternWord(tuple(letters))


def word_literal(word: Word) -> str:
    return PatternWord(word).literal()


class NCCombination:
    """Integer combination of pattern words over a shared index frame."""

    def __init__(self, terms: Mapping[Word, int] | None = None):
        self.terms: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[w] = self.terms.get(w, 0) + c

    @staticmethod
    def monomial(word: PatternWord | Word | str, coeff: int = 1) -> "NCCombination":
        if isinstance(word, str):
            word = parse_word(word)
        if isinstance(word, PatternWord):
            word = word.letters
        return NCCombination({word: coeff})

    def __add__(self, other: "NCCombination") -> "NCCombination":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCCombination(out)

    def __sub__(self, other: "NCCombination") -> "NCCombination":
        return self + other.scale(-1)

    def scale(self, c: int) -> "NCCombination":
        return NCCombination({w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "NCCombination") -> "NCCombination":
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = w1 + w2
                out[key] = out.get(key, 0) + c1 * c2
        return NCCombination(out)

    def __pow__(self, n: int) -> "NCCombination":
        out = NCCombination({(): 1})
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, NCCombination) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda t: _word_order_key(t[0])):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = word_literal(w) if w else "1"
            bits.append(f"{sign}{'' if mag == 1 else mag}{body}")
        return " ".join(bits).lstrip("+")


def _word_order_key(word: Word):
    """Global normal-form order: degree, kernel code, exponent word, letters."""
    pw = PatternWord(word)
    return (len(word), pw.kernel, pw.exponents, word)


# ---------------------------------------------------------------------------
# the forced sign


def _kernel_labels(kernel) -> Sequence[int]:
    if isinstance(kernel, Partition):
        return kernel.block_labels()
    return list(kernel)


def relation_sign(sigma: Sequence[int], kernel, regime) -> int:
    """Sign making ``w = sign . sigma(w)`` hold over the regime's sphere.

    Untwisted regimes always give +1.  Twisted regimes count inverted
    position pairs lying in distinct kernel blocks; equal indices (and an
    index against its own adjoint) commute and contribute nothing.
    """
    twisted = regime.twisted if hasattr(regime, "twisted") else bool(regime)
    if not twisted:
        return 1
    labels = _kernel_labels(kernel)
    k = len(sigma)
    if len(labels) != k:
        raise ValueError("kernel length does not match the permutation")
    # position of p in the rearranged word
    slot = {sigma[t] - 1: t for t in range(k)}
    inversions = 0
    for p in range(k):
        for q in range(p + 1, k):
            if labels[p] != labels[q] and slot[p] > slot[q]:
                inversions += 1
    return -1 if inversions % 2 else 1


def _segment_sign(sigma: Sequence[int], seg: Word, twisted: bool) -> int:
    if not twisted:
        return 1
    return relation_sign(sigma, [b for b, _ in seg], True)


# ---------------------------------------------------------------------------
# relation systems


@dataclass(frozen=True)
class RelationSchema:
    """One permutation family: lhs pattern, permutation, sign and scope.

    ``sign=None`` means the regime-forced sign per kernel; ``exact=True``
    restricts the schema to the kernel and exponents written in ``lhs``
    instead of quantifying over all coincidence patterns.
    """

    lhs: PatternWord
    sigma: tuple[int, ...]
    sign: int | None = None
    exact: bool = False

    @property
    def rhs(self) -> PatternWord:
        letters = tuple(self.lhs.letters[self.sigma[t] - 1] for t in range(len(self.sigma)))
        return PatternWord(letters, self.lhs.summed)

    def literal(self) -> str:
        sign = "-" if self.sign == -1 else "+"
        text = f"{self.lhs.literal()}={sign}{self.rhs.literal()}"
        if self.exact:
            labels = sorted(set(self.lhs.kernel))
            letters = "abcdefghijklmnopqrstuvwxyz"
            if len(labels) > 1:
                text += "[" + "≠".join(letters[i] for i in labels) + "]"
        return text


@dataclass(frozen=True)
class RelationSystem:
    """Monomial relation system over a regime: permutation families plus
    the quadratic relation and, in the real case, self-adjointness.

    The regime is the (field, twist) pair on its own; it is kept separate
    from any sphere because an arbitrary permutation set does not name one
    of the ten spheres, and because the free spheres normalize their twist
    flag away while a monomial system over the twisted regime must not.
    """

    field: Field
    twisted: bool
    perms: tuple[tuple[int, ...], ...]
    quadratic: bool = True
    selfadjoint: bool = False
    sphere: SphereSpec | None = None

    @property
    def complex_symbols(self) -> bool:
        return self.field is Field.COMPLEX

    def schemas(self) -> tuple[RelationSchema, ...]:
        out = []
        for sigma in self.perms:
            k = len(sigma)
            lhs = PatternWord(tuple((i, False) for i in range(k)))
            out.append(RelationSchema(lhs, sigma))
        return tuple(out)


def monomial_system(perms: Iterable[Sequence[int]], field: Field,
                    twisted: bool) -> RelationSystem:
    """The relation system cut out by a permutation set over a regime."""
    return RelationSystem(field, twisted, tuple(tuple(p) for p in perms),
                          quadratic=True, selfadjoint=field is Field.REAL)


def sphere_relations(s: SphereSpec) -> RelationSystem:
    perms = {
        Level.CLASSICAL: ((2, 1),),
        Level.HALF: ((3, 2, 1),),
        Level.FREE: (),
    }[s.level]
    return RelationSystem(s.field, s.twisted, perms, quadratic=True,
                          selfadjoint=s.field is Field.REAL, sphere=s)


def parse_relation(text: str, regime: SphereSpec) -> RelationSchema:
    """Parse a relation literal like ``"abc=-cba"`` or ``"ab=+ba[a≠b]"``.

    Without a kernel constraint the schema quantifies over all coincidence
    patterns (signs recomputed per kernel); with one it is exact.
    """
    body, _, constraint = text.partition("[")
    lhs_text, _, rhs_text = body.partition("=")
    if not rhs_text or rhs_text[0] not in "+-":
        raise ValueError(f"relation literal needs '=+' or '=-': {text!r}")
    sign = 1 if rhs_text[0] == "+" else -1
    lhs = parse_word(lhs_text.strip())
    rhs = parse_word(rhs_text[1:].strip())
    if sorted(lhs.letters) != sorted(rhs.letters):
        raise ValueError("the two sides must use the same letters")
    k = lhs.length
    sigma = None
    for cand in itertools.permutations(range(1, k + 1)):
        if all(rhs.letters[t] == lhs.letters[cand[t] - 1] for t in range(k)):
            sigma = cand
            break
    exact = bool(constraint)
    if not exact and sign != relation_sign(sigma, lhs.kernel, regime):
        raise ValueError("sign does not match the regime-forced sign; "
                         "add a kernel constraint for an exact schema")
    return RelationSchema(lhs, sigma, sign if exact else None, exact)


# ---------------------------------------------------------------------------
# group-level presets (coordinates u_ij)


SPAN_SIGN_TABLE: dict[tuple[int, int], int] = {
    (r, c): (-1 if (r == 3) != (c == 3) else 1)
    for r in (1, 2, 3) for c in (1, 2, 3)
}


@dataclass(frozen=True)
class GroupRelationSystem:
    """Commutation rules among the N*N coordinates of a quantum group."""

    group: GroupSpec

    def pair_sign(self, a: tuple[int, int], b: tuple[int, int]) -> int | None:
        """Sign in alpha beta = sign beta alpha for coordinates u_a, u_b;
        None when the group imposes no degree-2 relation."""
        if self.group.level is not Level.CLASSICAL:
            return None
        if not self.group.twisted:
            return 1
        if a != b and (a[0] == b[0] or a[1] == b[1]):
            return -1
        return 1

    def triple_sign(self, a, b, c) -> int | None:
        """Sign in alpha beta gamma = sign gamma beta alpha; None for free."""
        if self.group.level is Level.FREE:
            return None
        if not self.group.twisted:
            return 1
        if self.group.level is Level.CLASSICAL:
            return (self.pair_sign(a, b) * self.pair_sign(a, c)
                    * self.pair_sign(b, c))
        rows = len({a[0], b[0], c[0]})
        cols = len({a[1], b[1], c[1]})
        return SPAN_SIGN_TABLE[(rows, cols)]


def group_relations(g: GroupSpec) -> GroupRelationSystem:
    return GroupRelationSystem(g)


def check_span_table(table: Mapping[tuple[int, int], int]) -> bool:
    """Consistency of a span sign table with counit, antipode and
    comultiplication: diagonal +1, symmetry, and multiplicativity
    ``table[r,s] * table[s,c] == table[r,c]`` over every middle span."""
    spans = (1, 2, 3)
    if any(table[(r, r)] != 1 for r in spans):
        return False
    if any(table[(r, c)] != table[(c, r)] for r in spans for c in spans):
        return False
    return all(
        table[(r, s)] * table[(s, c)] == table[(r, c)]
        for r in spans for c in spans for s in spans
    )


def comult_sign_check(g: GroupSpec) -> bool:
    """Verify the half-liberated twisted sign table against the Hopf
    structure requirements; defined for the twisted half-liberated groups."""
    if g.level is not Level.HALF or not g.twisted:
        raise ValueError("the span sign table belongs to the twisted "
                         "half-liberated groups")
    return check_span_table(SPAN_SIGN_TABLE)


# ---------------------------------------------------------------------------
# the saturation engine


@dataclass
class _Component:
    signs: dict[Word, int]
    collapsed: bool


class Bounds:
    def __init__(self, max_degree: int = DEFAULT_MAX_DEGREE,
                 max_indices: int = DEFAULT_MAX_INDICES):
        self.max_degree = max_degree
        self.max_indices = max_indices

    def __repr__(self):  # pragma: no cover
        return f"Bounds(degree={self.max_degree}, indices={self.max_indices})"


class _Engine:
    """Signed reachability over words, with quadratic contraction."""

    def __init__(self, system: RelationSystem, bounds: Bounds):
        self.system = system
        self.bounds = bounds
        self.twisted = system.twisted
        self.complex_symbols = system.complex_symbols
        self.base_perms = list(system.perms)
        self.extra_rules: list[tuple[Word, Word, int]] = []
        self._components: dict[Word, _Component] = {}
        self._derived_cache: dict[tuple[Word, Word], int | None] = {}
        self.truncated = False
        self.trace: list[dict] = []

    # -- moves ---------------------------------------------------------

    def _neighbors(self, word: Word):
        n = len(word)
        for sigma in self.base_perms:
            m = len(sigma)
            for w in range(n - m + 1):
                seg = word[w:w + m]
                img = tuple(seg[sigma[t] - 1] for t in range(m))
                if img == seg:
                    continue
                sign = _segment_sign(sigma, seg, self.twisted)
                yield word[:w] + img + word[w + m:], sign, f"perm{sigma}"
        for lhs, rhs, sign in self.extra_rules:
            m = len(lhs)
            for w in range(n - m + 1):
                seg = word[w:w + m]
                sub = _match_pattern(lhs, seg)
                if sub is None:
                    continue
                img = tuple((sub[b], s) for b, s in rhs)
                if img == seg:
                    continue
                yield word[:w] + img + word[w + m:], sign, "derived"

    def component(self, word: Word) -> _Component:
        comp = self._components.get(word)
        if comp is not None:
            return comp
        signs = {word: 1}
        collapsed = False
        frontier = [word]
        while frontier:
            nxt = []
            for u in frontier:
                su = signs[u]
                for v, sign, _ in self._neighbors(u):
                    sv = su * sign
                    if v in signs:
                        if signs[v] != sv:
                            collapsed = True
                        continue
                    signs[v] = sv
                    nxt.append(v)
            frontier = nxt
        comp = _Component(signs, collapsed)
        for u in signs:
            self._components[u] = comp
        return comp

    def invalidate(self):
        self._components.clear()
        self._derived_cache.clear()

    # -- derivability ----------------------------------------------------

    def _blocks_of(self, word: Word) -> list[int]:
        seen = []
        for b, _ in word:
            if b not in seen:
                seen.append(b)
        return seen

    def _pair_orders(self):
        if self.complex_symbols:
            return ((False, True), (True, False))
        return ((False, False),)

    def relative_sign(self, lhs: Word, rhs: Word, budget: int = 1) -> int | None:
        """Sign s with lhs = s.rhs derivable, or None.  A collapsed
        component (both words provably zero) reports +1."""
        if sorted(lhs) != sorted(rhs):
            return None
        key = (lhs, rhs)
        if key in self._derived_cache:
            return self._derived_cache[key]
        self._derived_cache[key] = None  # cut recursion cycles
        result = self._relative_sign_uncached(lhs, rhs, budget)
        self._derived_cache[key] = result
        return result

    def _relative_sign_uncached(self, lhs: Word, rhs: Word, budget: int) -> int | None:
        comp = self.component(lhs)
        if rhs in comp.signs:
            if comp.collapsed:
                return 1
            return comp.signs[rhs] * comp.signs[lhs]
        if budget <= 0:
            return None
        return self._contract_search(lhs, rhs, budget)

    def _contract_search(self, lhs: Word, rhs: Word, budget: int) -> int | None:
        blocks = self._blocks_of(lhs)
        if len(blocks) + 1 > self.bounds.max_indices:
            self.truncated = True
            return None
        if len(lhs) + 2 > self.bounds.max_degree:
            self.truncated = True
            return None
        fresh = max(blocks, default=-1) + 1
        orders = self._pair_orders()
        for o1 in orders:
            pair1 = ((fresh, o1[0]), (fresh, o1[1]))
            for pos1 in range(len(lhs) + 1):
                u = lhs[:pos1] + pair1 + lhs[pos1:]
                ucomp = self.component(u)
                for o2 in orders:
                    pair2 = ((fresh, o2[0]), (fresh, o2[1]))
                    for pos2 in range(len(rhs) + 1):
                        v = rhs[:pos2] + pair2 + rhs[pos2:]
                        if v not in ucomp.signs:
                            continue
                        sign = 1 if ucomp.collapsed else ucomp.signs[v] * ucomp.signs[u]
                        if self._merges_consistent(u, v, fresh, blocks, sign, budget):
                            self.trace.append({
                                "rule": "contract",
                                "summed": "*" if (o1[0] or o1[1]) else "square",
                                "witness": [word_literal(u), word_literal(v)],
                                "conclusion": [word_literal(lhs), sign, word_literal(rhs)],
                            })
                            return sign
        return None

    def _merges_consistent(self, u: Word, v: Word, summed: int,
                           blocks: list[int], sign: int, budget: int) -> bool:
        for c in blocks:
            uc = tuple((c if b == summed else b, s) for b, s in u)
            vc = tuple((c if b == summed else b, s) for b, s in v)
            got = self.relative_sign(uc, vc, budget - 1)
            if got is None or (got != sign and not self.component(uc).collapsed):
                return False
        return True

    def derivable(self, schema_lhs: Word, schema_rhs: Word, sign: int,
                  budget: int = 2) -> bool:
        got = self.relative_sign(schema_lhs, schema_rhs, budget)
        return got == sign

    def promote(self, lhs: Word, rhs: Word, sign: int):
        """Install a derived relation as a rewrite rule for later rounds."""
        rule = (lhs, rhs, sign)
        if rule not in self.extra_rules:
            self.extra_rules.append(rule)
            self.invalidate()


def _match_pattern(pattern: Word, seg: Word) -> dict[int, int] | None:
    """Exact-kernel match of a segment against a rule pattern: bijective on
    blocks, star pattern equal; returns the block substitution."""
    sub: dict[int, int] = {}
    used: set[int] = set()
    for (pb, ps), (sb, ss) in zip(pattern, seg):
        if ps != ss:
            return None
        if pb in sub:
            if sub[pb] != sb:
                return None
        else:
            if sb in used:
                return None
            sub[pb] = sb
            used.add(sb)
    return sub


# ---------------------------------------------------------------------------
# saturation and its consumers


def _kernels(k: int) -> list[tuple[int, ...]]:
    out = []
    for blocks in _position_partitions(k):
        labels = [0] * k
        for i, b in enumerate(blocks):
            for pos in b:
                labels[pos] = i
        rename: dict[int, int] = {}
        canon = []
        for x in labels:
            rename.setdefault(x, len(rename))
            canon.append(rename[x])
        out.append(tuple(canon))
    return sorted(set(out))


def _family_instances(sigma: tuple[int, ...], complex_symbols: bool,
                      regime) -> Iterable[tuple[Word, Word, int]]:
    """All (lhs, rhs, forced sign) instances of a permutation family,
    skipping identically-true ones."""
    k = len(sigma)
    exp_choices = ((False, True) if complex_symbols else (False,))
    for kern in _kernels(k):
        sign = relation_sign(sigma, kern, regime)
        for exps in itertools.product(exp_choices, repeat=k):
            lhs = tuple((kern[p], exps[p]) for p in range(k))
            rhs = tuple(lhs[sigma[t] - 1] for t in range(k))
            if lhs == rhs and sign == 1:
                continue
            yield lhs, rhs, sign


@dataclass
class SaturationResult:
    system: RelationSystem
    schemas: tuple[RelationSchema, ...]
    truncated: bool
    engine: _Engine

    def has_family(self, sigma: tuple[int, ...]) -> bool:
        """True iff every instance of the permutation family is derived."""
        regime = self.system
        return all(
            self.engine.derivable(lhs, rhs, sign)
            for lhs, rhs, sign in _family_instances(
                sigma, self.system.complex_symbols, regime)
        )


def saturate(system: RelationSystem, max_degree: int = DEFAULT_MAX_DEGREE,
             max_indices: int = DEFAULT_MAX_INDICES,
             track_sigmas: Sequence[tuple[int, ...]] | None = None) -> SaturationResult:
    """Close the system and report the derivable low-degree schemas.

    The returned schemas enumerate every derivable permutation-family
    instance of degree at most 3 (the canonical sphere relations), each an
    exact-kernel schema.  Derived families are promoted to rewrite rules
    between rounds, so multi-stage consequences (outer deletions followed
    by shorter rewrites) are found.
    """
    bounds = Bounds(max_degree, max_indices)
    engine = _Engine(system, bounds)
    if track_sigmas is None:
        track_sigmas = [s for k in (2, 3)
                        for s in itertools.permutations(range(1, k + 1))
                        if s != tuple(range(1, k + 1))]
    targets = []
    for sigma in track_sigmas:
        for lhs, rhs, sign in _family_instances(sigma, system.complex_symbols,
                                                system):
            targets.append((sigma, lhs, rhs, sign))

    derived: dict[tuple[Word, Word], int] = {}
    for _ in range(3):
        progress = False
        for sigma, lhs, rhs, sign in targets:
            if (lhs, rhs) in derived:
                continue
            if engine.derivable(lhs, rhs, sign):
                derived[(lhs, rhs)] = sign
                engine.promote(lhs, rhs, sign)
                progress = True
        if not progress:
            break

    schemas = tuple(
        RelationSchema(PatternWord(lhs), _word_permutation(lhs, rhs), sign, exact=True)
        for (lhs, rhs), sign in sorted(derived.items())
    )
    return SaturationResult(system, schemas, engine.truncated, engine)


def _word_permutation(lhs: Word, rhs: Word) -> tuple[int, ...]:
    used = set()
    sigma = []
    for letter in rhs:
        for p, cand in enumerate(lhs):
            if p not in used and cand == letter:
                sigma.append(p + 1)
                used.add(p)
                break
    return tuple(sigma)


def reduce(expr: NCCombination, system: RelationSystem,
           max_degree: int = DEFAULT_MAX_DEGREE,
           max_indices: int = DEFAULT_MAX_INDICES):
    """Normal form of a combination under the system's monomial relations.

    Each monomial is replaced by the least word of its rewriting class
    under the global order (degree, kernel, exponents); classes where the
    search reaches a word with both signs are provably zero.  Returns the
    reduced combination and a derivation trace.  A zero result is a proof;
    a nonzero result is relative to the bounds.
    """
    engine = _Engine(system, Bounds(max_degree, max_indices))
    out: dict[Word, int] = {}
    trace = []
    for word, coeff in expr.terms.items():
        if len(word) > max_degree:
            raise SizeLimitError("monomial degree exceeds the bound")
        comp = engine.component(word)
        if comp.collapsed:
            trace.append({"rule": "collapse", "word": word_literal(word),
                          "result": "0"})
            continue
        rep = min(comp.signs, key=_word_order_key)
        rel = comp.signs[rep] * comp.signs[word]
        trace.append({"rule": "normal-form", "word": word_literal(word),
                      "result": ("-" if rel < 0 else "+") + word_literal(rep)})
        out[rep] = out.get(rep, 0) + coeff * rel
    return NCCombination(out), trace


_LEVEL_ORDER = (Level.CLASSICAL, Level.HALF, Level.FREE)


def classify_monomial_sphere(perms: Iterable[Sequence[int]], regime: SphereSpec | str,
                             max_degree: int = DEFAULT_MAX_DEGREE,
                             max_indices: int = DEFAULT_MAX_INDICES) -> str:
    """Identify the monomial sphere cut out by a set of permutations.

    Saturates the induced relation family and matches the derivable
    degree-at-most-3 relations against the canonical levels of the regime:
    the basic crossing family gives the (twisted) classical sphere, the
    degree-3 reversal family the (twisted) half-liberated one, and an
    empty family the free sphere.  Returns the sphere name, or
    ``"undetermined"`` when the bounds do not settle the question.
    """
    fld, twisted = _parse_regime(regime)
    perms = [tuple(p) for p in perms]
    for p in perms:
        if sorted(p) != list(range(1, len(p) + 1)):
            raise ValueError(f"not a permutation: {p!r}")
        if len(p) > max_degree - 2:
            raise SizeLimitError("permutation length exceeds the bounds")
    nontrivial = [p for p in perms if p != tuple(range(1, len(p) + 1))]
    if not nontrivial:
        return SphereSpec(fld, Level.FREE).name

    system = monomial_system(nontrivial, fld, twisted)
    result = saturate(system, max_degree, max_indices)
    if result.has_family((2, 1)):
        return SphereSpec(fld, Level.CLASSICAL, twisted).name
    if result.has_family((3, 2, 1)):
        if all(halfcommuting_membership(p) for p in nontrivial):
            return SphereSpec(fld, Level.HALF, twisted).name
        return "undetermined"
    return "undetermined"


def _parse_regime(regime) -> tuple[Field, bool]:
    if isinstance(regime, SphereSpec):
        return regime.field, regime.twisted
    names = {
        "real": (Field.REAL, False),
        "complex": (Field.COMPLEX, False),
        "real_twisted": (Field.REAL, True),
        "complex_twisted": (Field.COMPLEX, True),
    }
    try:
        return names[regime]
    except KeyError:
        raise ValueError(f"unknown regime {regime!r}")


def relation_group(system: RelationSystem, k: int,
                   max_indices: int | None = None) -> set[tuple[int, ...]]:
    """Permutations of k letters whose forced-sign relation family is
    derivable from the system by same-degree rewriting.

    For the sphere presets this recovers the full symmetric group at the
    classical level, the half-commuting subgroup at the half level and
    the trivial group at the free level.
    """
    if k > 6:
        raise SizeLimitError("relation_group supports k <= 6")
    engine = _Engine(system, Bounds(max_degree=k, max_indices=max_indices or k))
    exp_choices = ((False, True) if system.complex_symbols else (False,))
    sigmas = list(itertools.permutations(range(1, k + 1)))
    alive = set(sigmas)
    for kern in _kernels(k):
        if len(set(kern)) > (max_indices or k):
            continue
        for exps in itertools.product(exp_choices, repeat=k):
            seed = tuple((kern[p], exps[p]) for p in range(k))
            comp = engine.component(seed)
            dead = set()
            for sigma in alive:
                rhs = tuple(seed[sigma[t] - 1] for t in range(k))
                want = relation_sign(sigma, kern, system)
                got = comp.signs.get(rhs)
                if got is not None:
                    got *= comp.signs[seed]  # signs are relative to the root
                if got is None or (got != want and not comp.collapsed):
                    dead.add(sigma)
            alive -= dead
            if not alive:
                return set()
    return alive
