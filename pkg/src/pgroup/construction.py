"""Constructive noninner automorphisms of order p for class-2 p-groups.

The pipeline is a cascade: a central-twist automorphism when the center is
not cyclic, the explicit 2-group constructions on ``H = <a, b>`` when the
derived subgroup is cyclic of order at least 4, and certified oracle search
otherwise.  Every returned certificate is re-verified from scratch.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field

from .automorphism import (Automorphism, automorphism_order, extend_product, fixes_pointwise,
                           from_generator_images, homomorphism_violation, is_inner, remark4_map)
from .errors import (ConstructionFailed, GroupError, NotPGroup, PreconditionViolated,
                     RelationNotFound)
from .oracle import burnside_generators, search_fallback
from .structure import (center, decompose_hk, derived_subgroup, ds_condition,
                        find_commutator_generators, frattini, is_cyclic, log_p, nilpotency_class,
                        omega1_center, require_p_group)
from .table import GroupTable, SubgroupRef, commutator, generated_subgroup, power, subgroup_as_group

log = logging.getLogger(__name__)

REMARK4 = "REMARK4"
CASE_A_EVEN_I = "CASE_A_EVEN_I"
CASE_B_POWER = "CASE_B_POWER"
CASE_C_GENERIC = "CASE_C_GENERIC"
SEARCH_FALLBACK = "SEARCH_FALLBACK"
CASE_TAGS = (REMARK4, CASE_A_EVEN_I, CASE_B_POWER, CASE_C_GENERIC, SEARCH_FALLBACK)

FRATTINI = "FRATTINI"
OMEGA1_CENTER = "OMEGA1_CENTER"
MAXIMAL_SUBGROUP = "MAXIMAL_SUBGROUP"

THEOREM_VIOLATION = "THEOREM_VIOLATION"

FLAGS = ("is_automorphism", "order_equals_p", "is_noninner", "fixes_declared_set")


@dataclass(frozen=True)
class NoninnerCertificate:
    automorphism: Automorphism
    case_tag: str
    fixed_set: str
    witnesses: dict
    verified: dict = field(default_factory=lambda: dict.fromkeys(FLAGS, False))
    anomalies: tuple[str, ...] = ()

    @property
    def accepted(self) -> bool:
        return all(self.verified.get(k, False) for k in FLAGS)

    def to_json(self) -> dict:
        return {
            "case_tag": self.case_tag,
            "fixed_set": self.fixed_set,
            "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)},
            "group": self.automorphism.group.digest,
            "perm": list(self.automorphism.perm),
            "verified": {k: bool(self.verified.get(k, False)) for k in FLAGS},
            "anomalies": list(self.anomalies),
        }


def declared_set(G: GroupTable, cert: NoninnerCertificate, p: int) -> SubgroupRef:
    if cert.fixed_set == FRATTINI:
        return frattini(G, p)
    if cert.fixed_set == OMEGA1_CENTER:
        return omega1_center(G, p)
    if cert.fixed_set == MAXIMAL_SUBGROUP:
        return SubgroupRef(G, frozenset(cert.witnesses["M"]))
    raise ValueError(f"unknown fixed set {cert.fixed_set!r}")


def certify(G: GroupTable, cert: NoninnerCertificate, p: int) -> NoninnerCertificate:
    """Recompute every verification flag from the permutation alone."""
    perm = cert.automorphism.perm
    bijective = len(perm) == G.order and sorted(perm) == list(range(G.order))
    is_aut = bijective and perm[0] == 0 and homomorphism_violation(G, perm) is None
    flags = dict.fromkeys(FLAGS, False)
    flags["is_automorphism"] = is_aut
    if is_aut:
        f = Automorphism(G, tuple(perm))
        flags["order_equals_p"] = automorphism_order(f) == p
        flags["is_noninner"] = not is_inner(G, f)[0]
        S = declared_set(G, cert, p)
        ok = fixes_pointwise(f, S)
        if cert.fixed_set == MAXIMAL_SUBGROUP:
            ok = ok and len(S) * p == G.order and frattini(G, p).members <= S.members \
                and len(generated_subgroup(G, S.members)) == len(S)
        flags["fixes_declared_set"] = ok
    return dataclasses.replace(cert, verified=flags)


def resolve_power_relation(Hgrp: GroupTable, a: int, b: int, n: int, p: int = 2) -> tuple[str, int]:
    """Smallest i >= 0 with ``a^(p^n i) = b^(p^n)`` ("first") or else
    ``a^(p^n) = b^(p^n i)`` ("second")."""
    N = p ** n
    A, B = power(Hgrp, a, N), power(Hgrp, b, N)
    for i in range(int(Hgrp.orders[A])):
        if power(Hgrp, A, i) == B:
            return "first", i
    for i in range(int(Hgrp.orders[B])):
        if power(Hgrp, B, i) == A:
            return "second", i
    raise RelationNotFound("no power relation between a^(p^n) and b^(p^n); Z(H) is not cyclic")


def _choose_fixed_set(G, f, p):
    if fixes_pointwise(f, frattini(G, p)):
        return FRATTINI
    if fixes_pointwise(f, omega1_center(G, p)):
        return OMEGA1_CENTER
    return None


def _check_preconditions(G, p):
    try:
        p = require_p_group(G, p)
    except NotPGroup as exc:
        raise PreconditionViolated(str(exc)) from None
    if len(derived_subgroup(G)) == 1:
        raise PreconditionViolated("group is abelian")
    cls = nilpotency_class(G)
    if cls != 2:
        raise PreconditionViolated(f"nilpotency class is {cls}, not 2")
    return p


def construct_noninner(G: GroupTable, p: int | None = None) -> NoninnerCertificate:
    p = _check_preconditions(G, p)
    anomalies: list[str] = []

    Z = center(G)
    D = derived_subgroup(G)
    if not is_cyclic(Z)[0]:
        zs = sorted(omega1_center(G, p).members - D.members)
        if zs:
            cert = _remark4(G, p, zs[0])
            if cert.accepted:
                return cert
            anomalies.append(f"construction_failed:{REMARK4}")

    reason = "derived subgroup not cyclic"
    if is_cyclic(D)[0]:
        a, b = find_commutator_generators(G)
        n = log_p(len(D), p)
        if p != 2:
            reason = "odd prime"
        elif n == 1:
            reason = "p=2 and n=1"
            if ds_condition(G, p):
                anomalies.append(THEOREM_VIOLATION)
        else:
            try:
                cert = _two_generator_cases(G, p, a, b, n)
            except (ConstructionFailed, GroupError) as exc:
                stage = exc.stage if isinstance(exc, ConstructionFailed) else type(exc).__name__
                log.warning("explicit construction failed (%s); falling back to search", exc)
                anomalies.append(f"construction_failed:{stage}")
                reason = f"construction failed at {stage}"
            else:
                if cert.accepted:
                    return cert
                anomalies.append(f"construction_failed:{cert.case_tag}")
                reason = f"{cert.case_tag} did not verify"

    f = search_fallback(G, p)
    cert = NoninnerCertificate(f, SEARCH_FALLBACK, _choose_fixed_set(G, f, p) or FRATTINI,
                               {"reason": reason}, anomalies=tuple(anomalies))
    return certify(G, cert, p)


def _remark4(G, p, z):
    basis = burnside_generators(G, p)
    g = basis[0]
    M = generated_subgroup(G, frattini(G, p).members | set(basis[1:]))
    alpha = remark4_map(G, M, g, z)
    cert = NoninnerCertificate(alpha, REMARK4, MAXIMAL_SUBGROUP,
                               {"z": z, "g": g, "M": M.sorted()})
    return certify(G, cert, p)


def _two_generator_cases(G, p, a, b, n):
    H, K = decompose_hk(G, a, b)
    Hg, emb = subgroup_as_group(H)
    pre = emb.preimage()
    ah, bh = pre[a], pre[b]
    N, half = 2 ** n, 2 ** (n - 1)
    ZH = center(Hg)
    wit = {"a": a, "b": b, "n": n}

    expected_ZH = generated_subgroup(Hg, [power(Hg, ah, N), power(Hg, bh, N), commutator(Hg, ah, bh)])
    if expected_ZH != ZH:
        raise ConstructionFailed("center_of_H", wit)
    if not {emb(x) for x in ZH.members} <= center(G).members:
        raise ConstructionFailed("center_of_H_not_central", wit)
    if not is_cyclic(ZH)[0]:
        raise ConstructionFailed("center_of_H_not_cyclic", wit)

    orientation, i = resolve_power_relation(Hg, ah, bh, n)
    wit.update(orientation=orientation, i=i)
    # "second" orientation: swap the roles of a and b
    x, y = (ah, bh) if orientation == "first" else (bh, ah)
    wit["swapped"] = orientation == "second"
    mul = Hg.mul

    if i % 2 == 0:
        tag = CASE_A_EVEN_I
        c = int(mul[power(Hg, x, -i), y])
        wit["c"] = emb(c)
        if Hg.orders[c] != N or power(Hg, c, half) in ZH:
            raise ConstructionFailed("case_a_element_c", wit)
        gens, imgs = [x, c], [int(mul[x, power(Hg, c, half)]), c]
    else:
        c = int(mul[power(Hg, x, -i), y])
        wit["c"] = emb(c)
        if Hg.orders[c] != 2 * N:
            raise ConstructionFailed("order_of_c", wit)
        xN = power(Hg, x, N)
        if commutator(Hg, x, y) in generated_subgroup(Hg, [xN]):
            tag = CASE_B_POWER
            cN = power(Hg, c, N)
            j = next((j for j in range(int(Hg.orders[xN])) if power(Hg, xN, j) == cN), None)
            if j is None:
                raise ConstructionFailed("case_b_no_j", wit)
            d = int(mul[power(Hg, x, -j), c])
            wit.update(j=j, d=emb(d))
            if j % 2 or Hg.orders[d] != N or power(Hg, d, half) in ZH:
                raise ConstructionFailed("case_b_intermediate_claims", wit)
            gens, imgs = [x, d], [int(mul[x, power(Hg, d, half)]), d]
        else:
            tag = CASE_C_GENERIC
            if ZH != generated_subgroup(Hg, [commutator(Hg, x, y)]):
                raise ConstructionFailed("case_c_center", wit)
            e = int(mul[power(Hg, x, -half * i), power(Hg, y, half)])
            wit["e"] = emb(e)
            if Hg.orders[e] != 2 or e in ZH:
                raise ConstructionFailed("case_c_intermediate_claims", wit)
            gens, imgs = [x, y], [int(mul[x, e]), int(mul[y, e])]

    try:
        phi = from_generator_images(Hg, gens, imgs)
    except GroupError as exc:
        raise ConstructionFailed(f"{tag}:phi_on_H:{type(exc).__name__}", wit) from None
    if not fixes_pointwise(phi, ZH) or automorphism_order(phi) != 2:
        raise ConstructionFailed(f"{tag}:phi_on_H_properties", wit)
    beta = extend_product(G, H, K, phi)

    fixed = _choose_fixed_set(G, beta, p)
    if fixed is None:
        raise ConstructionFailed(f"{tag}:no_fixed_set", wit)
    wit["H_order"] = len(H)
    wit["K_order"] = len(K)
    return certify(G, NoninnerCertificate(beta, tag, fixed, wit), p)
