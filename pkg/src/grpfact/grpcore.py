"""Generic group machinery on enumerated action domains.

Groups are given by semilinear generators; every computation runs on the
permutation image over a chosen action domain while tracking the matrix
form of each element alongside its permutation.  Stabilizer chains use
randomized Schreier-Sims: with a known (claimed) target order the build is
Las Vegas and the reached order is itself the certificate; with an unknown
order a Monte Carlo phase is followed by a full deterministic Schreier
generator verification pass.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .actions import Action, ActionError, PermDomain, domain_size
from .gf import FieldSpec
from .linalg import (
    PAIR,
    VECTOR,
    ActionPoint,
    GroupElement,
    identity_element,
    sl_compose,
    sl_inverse,
)


class GrpError(Exception):
    pass


class CertificationError(GrpError):
    pass


class OrbitBudgetError(GrpError):
    def __init__(self, message, partial_size):
        super().__init__(message)
        self.partial_size = partial_size


# ---------------------------------------------------------------------------
# tracked elements: matrix form + permutation image


class Tracked:
    __slots__ = ("elem", "perm", "_inv")

    def __init__(self, elem: GroupElement, perm: np.ndarray):
        self.elem = elem
        self.perm = perm
        self._inv = None

    def inverse(self) -> "Tracked":
        if self._inv is None:
            inv_perm = np.empty_like(self.perm)
            inv_perm[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
            self._inv = Tracked(sl_inverse(self.elem), inv_perm)
            self._inv._inv = self
        return self._inv

    def is_identity(self) -> bool:
        return bool((self.perm == np.arange(len(self.perm))).all())


def t_compose(a: Tracked, b: Tracked) -> Tracked:
    """Apply a, then b."""
    return Tracked(sl_compose(a.elem, b.elem), b.perm[a.perm])


class Rattle:
    """Product-replacement random walk over a fixed generating set."""

    def __init__(self, gens: list[Tracked], ident: Tracked, rng, extra: int = 6, scramble: int = 50):
        self.slots = list(gens) + [ident] * extra
        self.accu = ident
        self.rng = rng
        for _ in range(max(scramble, 5 * len(self.slots))):
            self._stir()

    def _stir(self) -> Tracked:
        # i != j keeps <slots> invariant; allowing i == j can erase a slot
        i = int(self.rng.integers(len(self.slots)))
        j = int(self.rng.integers(len(self.slots) - 1))
        if j >= i:
            j += 1
        s = self.slots[i]
        if self.rng.integers(2):
            s = s.inverse()
        self.slots[j] = t_compose(self.slots[j], s) if self.rng.integers(2) else t_compose(s, self.slots[j])
        self.accu = t_compose(self.accu, self.slots[j])
        return self.accu

    def sample(self) -> Tracked:
        return self._stir()


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("base", "own", "eff", "orbit", "seen", "par")

    def __init__(self, base: int):
        self.base = base
        self.own: list[Tracked] = []
        self.eff: list[Tracked] = []
        self.orbit = None
        self.seen = None
        self.par = None


class StabChain:
    """BSGS over a PermDomain with matrix lifts tracked through every product."""

    MAX_STALL = 4000
    QUIET_ROUNDS = 14

    def __init__(self, domain: PermDomain, base_hint: list[int] | None = None):
        self.domain = domain
        self.levels: list[_Level] = []
        self._arange = domain.identity_perm
        spec = domain.action.spec
        self.ident = Tracked(identity_element(spec, domain.action.n), self._arange)
        self.originals: list[Tracked] = []
        self.verified = False
        for b in base_hint or []:
            lvl = _Level(int(b))
            self.levels.append(lvl)
        for li in range(len(self.levels) - 1, -1, -1):
            self._recompute_orbit(li)

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(
        cls,
        domain: PermDomain,
        generators: list[GroupElement],
        base_hint=None,
        known_order: int | None = None,
        rng=None,
        name: str = "",
        max_stall: int | None = None,
        tracked: list["Tracked"] | None = None,
        post_verify: bool = False,
    ) -> "StabChain":
        """Chain construction.

        A known_order build is a certificate only when the caller has an
        a-priori upper bound group of that order containing the generators
        (determinant/form/block-shape invariants, homomorphic images, ...).
        Without such a bound - searched candidates in particular - the
        generated group can exceed the claim while the orbit-length product
        passes through it; post_verify=True closes that hole by running the
        deterministic Schreier check and rejecting any growth.
        """
        chain = cls(domain, base_hint)
        rng = rng if rng is not None else np.random.default_rng(zlib.crc32(name.encode()) or 1)
        chain.originals = tracked if tracked is not None else [
            Tracked(g, domain.perm_of(g)) for g in generators
        ]
        for t in chain.originals:
            chain._add(t)
        nontrivial = [t for t in chain.originals if not t.is_identity()]
        if not nontrivial:
            chain.verified = True
            if known_order is not None and known_order != 1:
                raise CertificationError(f"{name}: trivial group, claimed order {known_order}")
            return chain
        if known_order is not None:
            chain._build_to_order(nontrivial, known_order, rng, name, max_stall)
            if post_verify:
                chain._verify_loop()
                if chain.order() != known_order:
                    raise CertificationError(
                        f"{name}: generated group has order {chain.order()}, "
                        f"exceeding the claimed {known_order}"
                    )
        else:
            chain._build_monte_carlo(nontrivial, rng)
            chain._verify_loop()
        chain.verified = True
        return chain

    def _build_to_order(self, gens, target, rng, name, max_stall=None):
        cap = max_stall if max_stall is not None else self.MAX_STALL
        if self.order() == target:
            self._assert_originals_sift(name)
            return
        rat = Rattle(gens, self.ident, rng)
        stall = 0
        while self.order() < target:
            if self._add(rat.sample()):
                stall = 0
            else:
                stall += 1
                if stall > cap:
                    raise CertificationError(
                        f"{name}: chain stalled at order {self.order()} (claimed {target})"
                    )
        if self.order() != target:
            raise CertificationError(
                f"{name}: computed order {self.order()} exceeds claimed {target}"
            )
        self._assert_originals_sift(name)

    def _assert_originals_sift(self, name):
        for t in self.originals:
            residue, _ = self._sift(t)
            if not residue.is_identity():
                raise CertificationError(f"{name}: generator fails to sift after build")

    def _build_monte_carlo(self, gens, rng):
        rat = Rattle(gens, self.ident, rng)
        quiet = 0
        while quiet < self.QUIET_ROUNDS:
            quiet = 0 if self._add(rat.sample()) else quiet + 1

    def _verify_loop(self):
        while True:
            witness = self._schreier_witness()
            if witness is None:
                return
            self._add(witness)

    def _schreier_witness(self):
        for li in range(len(self.levels) - 1, -1, -1):
            level = self.levels[li]
            for beta in map(int, level.orbit):
                u_beta = self._transversal(li, beta)
                for g in level.eff:
                    target = int(g.perm[beta])
                    s = t_compose(t_compose(u_beta, g), self._transversal(li, target).inverse())
                    residue, _ = self._sift(s)
                    if not residue.is_identity():
                        return residue
        return None

    # -- internals -------------------------------------------------------------

    def _recompute_orbit(self, li: int):
        level = self.levels[li]
        level.eff = [t for lvl in self.levels[li:] for t in lvl.own]
        N = self.domain.size
        seen = np.zeros(N, dtype=bool)
        par = np.full(N, -1, dtype=np.int32)
        seen[level.base] = True
        frontier = np.array([level.base], dtype=np.int64)
        chunks = [frontier]
        while frontier.size:
            parts = []
            for gi, g in enumerate(level.eff):
                imgs = g.perm[frontier]
                new = np.unique(imgs[~seen[imgs]])
                if new.size:
                    seen[new] = True
                    par[new] = gi
                    parts.append(new)
            frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
            if frontier.size:
                chunks.append(frontier)
        level.orbit = np.concatenate(chunks)
        level.seen = seen
        level.par = par

    def _transversal(self, li: int, beta: int) -> Tracked:
        level = self.levels[li]
        path = []
        b = beta
        while b != level.base:
            e = level.eff[int(level.par[b])]
            path.append(e)
            b = int(e.inverse().perm[b])
        t = self.ident
        for e in reversed(path):
            t = t_compose(t, e)
        return t

    def _sift(self, t: Tracked, start: int = 0):
        u = t
        for li in range(start, len(self.levels)):
            level = self.levels[li]
            beta = int(u.perm[level.base])
            if beta == level.base:
                continue
            if not level.seen[beta]:
                return u, li
            while beta != level.base:
                e = level.eff[int(level.par[beta])]
                einv = e.inverse()
                u = t_compose(u, einv)
                beta = int(einv.perm[beta])
        return u, len(self.levels)

    def _add(self, t: Tracked) -> bool:
        residue, li = self._sift(t)
        if residue.is_identity():
            return False
        if li == len(self.levels):
            moved = int(np.nonzero(residue.perm != self._arange)[0][0])
            self.levels.append(_Level(moved))
        self.levels[li].own.append(residue)
        for j in range(li, -1, -1):
            self._recompute_orbit(j)
        return True

    def add_element(self, g: GroupElement) -> bool:
        """Incremental extension; invalidates prior verification."""
        self.verified = False
        t = Tracked(g, self.domain.perm_of(g))
        self.originals.append(t)
        return self._add(t)

    # -- queries ----------------------------------------------------------------

    def order(self) -> int:
        out = 1
        for level in self.levels:
            out *= len(level.orbit)
        return out

    def base_points(self) -> list[int]:
        return [level.base for level in self.levels]

    def sift_residue(self, g: GroupElement) -> Tracked:
        return self._sift(Tracked(g, self.domain.perm_of(g)))[0]

    def contains(self, g: GroupElement) -> bool:
        """Membership of the permutation image (kernel classes are collapsed)."""
        try:
            return self.sift_residue(g).is_identity()
        except ActionError:
            return False

    def contains_tracked(self, t: Tracked) -> bool:
        return self._sift(t)[0].is_identity()

    def suffix_order(self, from_level: int) -> int:
        out = 1
        for level in self.levels[from_level:]:
            out *= len(level.orbit)
        return out

    def suffix_generators(self, from_level: int) -> list[GroupElement]:
        """Generators of the pointwise stabilizer of the first base points."""
        gens = [t.elem for lvl in self.levels[from_level:] for t in lvl.own]
        return gens or [self.ident.elem]

    def random_element(self, rng) -> Tracked:
        acc = self.ident
        for li in range(len(self.levels) - 1, -1, -1):
            level = self.levels[li]
            pick = int(level.orbit[int(rng.integers(len(level.orbit)))])
            acc = t_compose(acc, self._transversal(li, pick))
        return acc

    def elements(self):
        """Iterate the whole group (use only at small orders)."""
        transversals = []
        for li in range(len(self.levels) - 1, -1, -1):
            level = self.levels[li]
            transversals.append([self._transversal(li, int(b)) for b in level.orbit])
        if not transversals:
            yield self.ident
            return

        def walk(i, acc):
            if i == len(transversals):
                yield acc
                return
            for t in transversals[i]:
                yield from walk(i + 1, t_compose(acc, t))

        yield from walk(0, self.ident)


# ---------------------------------------------------------------------------
# group specs


_DOMAIN_CACHE: dict[tuple, PermDomain] = {}


def shared_domain(tag: str, spec: FieldSpec, n: int, max_size: int = 200_000) -> PermDomain:
    key = (tag, spec.p, spec.f, n)
    if key not in _DOMAIN_CACHE:
        _DOMAIN_CACHE[key] = PermDomain(Action(tag, spec, n), max_size)
    return _DOMAIN_CACHE[key]


@dataclass
class GroupSpec:
    """Named matrix group: generators, claimed order, provenance, home action.

    stabilizer_of, when set, records that the group is the full ambient
    stabilizer of the listed points (applied in order); the intersection
    engine uses it to compute H n K as an iterated point stabilizer.
    """

    name: str
    n: int
    spec: FieldSpec
    generators: list[GroupElement]
    claimed_order: int | None = None
    provenance: str = ""
    action_tag: str | None = None
    stabilizer_of: list | None = None
    _chain: StabChain | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.action_tag is None:
            self.action_tag = PAIR if self.has_duality else VECTOR

    @property
    def has_duality(self) -> bool:
        return any(g.dual for g in self.generators)

    @property
    def q(self) -> int:
        return self.spec.q

    def identity(self) -> GroupElement:
        return identity_element(self.spec, self.n)

    def chain(self, rng=None) -> StabChain:
        """Build (once) the certified stabilizer chain on the home action."""
        if self._chain is None:
            domain = shared_domain(self.action_tag, self.spec, self.n)
            self._chain = StabChain.build(
                domain,
                self.generators,
                known_order=self.claimed_order,
                rng=rng,
                name=self.name,
            )
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def contains(self, g: GroupElement) -> bool:
        return self.chain().contains(g)

    def with_name(self, name: str) -> "GroupSpec":
        return GroupSpec(name, self.n, self.spec, self.generators, self.claimed_order, self.provenance, self.action_tag)


# ---------------------------------------------------------------------------
# orbits over packed keys (domain-free)


@dataclass
class OrbitSet:
    """Closure of a seed under the generators, as packed keys."""

    tag: str
    seed_key: int
    size: int
    keys: np.ndarray | None
    seen_dense: np.ndarray | None = None
    transporters: dict | None = None

    def contains_key(self, key: int) -> bool:
        if self.seen_dense is not None:
            return 0 <= key < len(self.seen_dense) and bool(self.seen_dense[key])
        if self.transporters is not None:
            return key in self.transporters
        return key in self._key_set()

    def _key_set(self):
        if not hasattr(self, "_cached_set"):
            self._cached_set = set(int(k) for k in self.keys)
        return self._cached_set


_DENSE_SEEN_LIMIT = 2**26


def orbit(
    group_or_gens,
    point: ActionPoint,
    action: Action | None = None,
    max_points: int = 2**24,
    keep_keys: bool = True,
) -> OrbitSet:
    """BFS closure of the point under the generators, vectorized over keys."""
    if isinstance(group_or_gens, GroupSpec):
        gens = group_or_gens.generators
        spec, n = group_or_gens.spec, group_or_gens.n
    else:
        gens = list(group_or_gens)
        spec, n = gens[0].spec, gens[0].n
    if action is None:
        action = Action(point.tag, spec, n)
    seed = action.point_key(point)
    keyspace = (spec.q**n) ** (2 if action.two_sided else 1)
    dense = keyspace <= _DENSE_SEEN_LIMIT
    if dense:
        seen = np.zeros(keyspace, dtype=bool)
        seen[seed] = True
    else:
        seen_set = {seed}
    chunks = [np.array([seed], dtype=np.int64)]
    frontier = chunks[0]
    total = 1
    while frontier.size:
        parts = []
        for g in gens:
            imgs = action.apply_batch(g, frontier)
            if dense:
                new = np.unique(imgs[~seen[imgs]])
                if new.size:
                    seen[new] = True
                    parts.append(new)
            else:
                imgs = np.unique(imgs)
                new = np.array([k for k in imgs.tolist() if k not in seen_set], dtype=np.int64)
                if new.size:
                    seen_set.update(new.tolist())
                    parts.append(new)
        frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        total += frontier.size
        if total > max_points:
            raise OrbitBudgetError(f"orbit exceeded {max_points} points", total)
        if frontier.size:
            chunks.append(frontier)
    keys = np.concatenate(chunks) if keep_keys else None
    return OrbitSet(point.tag, seed, total, keys, seen if dense else None)


def orbit_with_transporters(gens: list[GroupElement], point: ActionPoint, action: Action | None = None, max_points: int = 500_000) -> OrbitSet:
    """Small-scale orbit with a witness word per point (gen index, parent key)."""
    spec, n = gens[0].spec, gens[0].n
    if action is None:
        action = Action(point.tag, spec, n)
    seed = action.point_key(point)
    trans: dict[int, tuple[int, int] | None] = {seed: None}
    queue = [seed]
    head = 0
    while head < len(queue):
        key = queue[head]
        head += 1
        x = action.key_point(key)
        for gi, g in enumerate(gens):
            img = action.point_key(action.apply_point(g, x))
            if img not in trans:
                trans[img] = (gi, key)
                queue.append(img)
                if len(trans) > max_points:
                    raise OrbitBudgetError("transporter orbit exceeded budget", len(trans))
    keys = np.array(queue, dtype=np.int64)
    out = OrbitSet(point.tag, seed, len(queue), keys)
    out.transporters = trans
    return out


def transporter(orbit_set: OrbitSet, gens: list[GroupElement], key: int) -> GroupElement:
    """Element moving the seed to the given orbit key."""
    word = []
    k = key
    while True:
        step = orbit_set.transporters[k]
        if step is None:
            break
        gi, parent = step
        word.append(gi)
        k = parent
    g = identity_element(gens[0].spec, gens[0].n)
    for gi in reversed(word):
        g = sl_compose(g, gens[gi])
    return g


def stabilizer_generators(
    group: GroupSpec,
    point: ActionPoint,
    rng=None,
    name: str | None = None,
) -> GroupSpec:
    """Point stabilizer via Schreier generators, certified by orbit-stabilizer."""
    action = Action(point.tag, group.spec, group.n)
    orb = orbit_with_transporters(group.generators, point, action)
    total = group.order()
    if total % orb.size:
        raise GrpError("orbit length does not divide the group order")
    target = total // orb.size
    stab_name = name or f"{group.name}_stab"
    domain = shared_domain(group.action_tag, group.spec, group.n)
    chain = StabChain(domain)
    gens_out: list[GroupElement] = []
    if target > 1:
        reps: dict[int, GroupElement] = {}
        for key in map(int, orb.keys):
            reps[key] = transporter(orb, group.generators, key)
        done = False
        for key in map(int, orb.keys):
            if done:
                break
            u = reps[key]
            x = action.key_point(key)
            for gi, g in enumerate(group.generators):
                img_key = action.point_key(action.apply_point(g, x))
                s = sl_compose(sl_compose(u, g), sl_inverse(reps[img_key]))
                if chain.add_element(s):
                    gens_out.append(s)
                if chain.order() == target:
                    done = True
                    break
        if chain.order() != target:
            raise CertificationError(
                f"{stab_name}: Schreier generators reached {chain.order()}, expected {target}"
            )
    spec_out = GroupSpec(
        stab_name,
        group.n,
        group.spec,
        gens_out or [group.identity()],
        claimed_order=target,
        provenance=f"stabilizer of {point.tag} point in {group.name}",
        action_tag=group.action_tag,
    )
    return spec_out


# ---------------------------------------------------------------------------
# derived series / solvable residual


def derived_subgroup(group: GroupSpec, rng=None, name: str | None = None) -> GroupSpec:
    """Normal closure of generator commutators, with verified closure fixpoint.

    Commutators and their conjugates always have trivial duality bit, so the
    derived subgroup acts on bare vectors even when the parent does not; the
    vector domain is both faithful and much smaller than a pair domain.
    """
    rng = rng if rng is not None else np.random.default_rng(zlib.crc32(group.name.encode()) or 1)
    derived_tag = VECTOR if group.action_tag == PAIR else group.action_tag
    domain = shared_domain(derived_tag, group.spec, group.n)
    gens = group.generators
    comms = []
    for a in gens:
        for b in gens:
            c = sl_compose(sl_compose(sl_inverse(a), sl_inverse(b)), sl_compose(a, b))
            comms.append(c)
    chain = StabChain.build(domain, comms, rng=rng, name=(name or group.name) + "'")
    current = [t.elem for lvl in chain.levels for t in lvl.own]
    changed = True
    while changed:
        changed = False
        for t in list(current):
            for g in gens:
                conj = sl_compose(sl_compose(sl_inverse(g), t), g)
                if not chain.contains(conj):
                    chain.add_element(conj)
                    current.append(conj)
                    changed = True
        if changed:
            chain._build_monte_carlo([Tracked(e, domain.perm_of(e)) for e in current], rng)
            chain._verify_loop()
    out_gens = current or [group.identity()]
    return GroupSpec(
        name or f"{group.name}'",
        group.n,
        group.spec,
        out_gens,
        claimed_order=chain.order(),
        provenance=f"derived subgroup of {group.name}",
        action_tag=derived_tag,
    )


def solvable_residual(group: GroupSpec, rng=None) -> GroupSpec:
    """Limit of the derived series."""
    cur = group
    cur_order = cur.order()
    step = 0
    while True:
        nxt = derived_subgroup(cur, rng=rng, name=f"{group.name}^({step + 1})")
        nxt_order = nxt.order()
        if nxt_order == cur_order:
            return cur.with_name(f"{group.name}^(inf)") if step else GroupSpec(
                f"{group.name}^(inf)",
                group.n,
                group.spec,
                cur.generators,
                claimed_order=cur_order,
                provenance=f"solvable residual of {group.name}",
                action_tag=group.action_tag,
            )
        cur, cur_order = nxt, nxt_order
        step += 1


def same_subgroup(a: GroupSpec, b: GroupSpec) -> bool:
    """Equality as subgroups: mutual membership of generators."""
    if a.order() != b.order():
        return False
    return all(b.contains(g) for g in a.generators) and all(a.contains(g) for g in b.generators)


def product_membership(h_orbit: OrbitSet, action: Action, g: GroupElement, omega: ActionPoint) -> bool:
    """g lies in H.K (K the full stabilizer of omega) iff omega^(g^-1) is in omega^H."""
    pre = action.apply_point(sl_inverse(g), omega)
    return h_orbit.contains_key(action.point_key(pre))


def tracked_power(t: Tracked, e: int) -> Tracked:
    if e < 0:
        return tracked_power(t.inverse(), -e)
    out = Tracked(identity_element(t.elem.spec, t.elem.n), np.arange(len(t.perm), dtype=t.perm.dtype))
    base = t
    while e:
        if e & 1:
            out = t_compose(out, base)
        base = t_compose(base, base)
        e >>= 1
    return out


def element_order_perm(perm: np.ndarray) -> int:
    """Order of a permutation: lcm of cycle lengths."""
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            length += 1
        out = out * length // np.gcd(out, length)
    return int(out)
