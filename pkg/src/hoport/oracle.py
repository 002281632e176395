"""Exhaustive reference enumeration of matches, for cross-checking.

This module deliberately shares no search logic with the staged matcher: it
tries every injective assignment of subject nodes to first-order pattern
nodes, every split of the remaining subject nodes into disjoint bodies for
the higher-order pattern nodes, and every port bijection for each body.
Obviously hopeless candidates are dropped early using the same per-clause
predicates `check_morphism` is built from; every surviving candidate is then
accepted or rejected by `check_morphism` itself.

Cost grows factorially with subject size, so subjects are capped.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .errors import EmptyPattern, SignatureMismatch, SubjectTooLarge
from .matcher import (
    Morphism,
    check_morphism,
    derive_name_subst,
    fo_instantiation_violations,
    ho_instantiation_violations,
)
from .portgraph import PortGraph, PortRef, node_key

DEFAULT_NODE_LIMIT = 8


def brute_force_morphisms(pattern: PortGraph, subject: PortGraph,
                          max_subject_nodes: int = DEFAULT_NODE_LIMIT
                          ) -> Iterator[Morphism]:
    """Yield every valid match by exhaustive enumeration.

    Raises SubjectTooLarge when the subject has more than
    ``max_subject_nodes`` nodes.
    """
    if pattern.sig != subject.sig:
        raise SignatureMismatch("pattern and subject use different signatures")
    if pattern.node_count() == 0:
        raise EmptyPattern("pattern graph has no nodes")
    if subject.node_count() > max_subject_nodes:
        raise SubjectTooLarge(
            f"subject has {subject.node_count()} nodes; the exhaustive "
            f"reference enumeration is capped at {max_subject_nodes}")

    fo_ids = sorted(pattern.fo_nodes, key=node_key)
    ho_ids = sorted(pattern.ho_nodes, key=node_key)
    s_nodes = subject.node_ids()

    for image in itertools.permutations(s_nodes, len(fo_ids)):
        node_map = dict(zip(fo_ids, image))
        name_subst = derive_name_subst(pattern, subject, node_map)
        if name_subst is None:
            continue
        if fo_instantiation_violations(pattern, subject, node_map, name_subst):
            continue
        rest = [n for n in s_nodes if n not in set(image)]
        for bodies in _disjoint_bodies(ho_ids, rest):
            if ho_instantiation_violations(pattern, subject, bodies, {}):
                continue
            for body_ports in _all_port_bijections(pattern, subject, ho_ids, bodies):
                m = Morphism(dict(node_map), dict(bodies), dict(name_subst),
                             body_ports)
                if not check_morphism(pattern, subject, m):
                    yield m


def _disjoint_bodies(ho_ids: list[str], pool: list[str]
                     ) -> Iterator[dict[str, frozenset[str]]]:
    """Every assignment of pairwise disjoint subsets of ``pool`` (empty sets
    included) to the given nodes, in (size, ids) order per node."""
    if not ho_ids:
        yield {}
        return
    x, rest_ids = ho_ids[0], ho_ids[1:]
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            taken = set(combo)
            remaining = [n for n in pool if n not in taken]
            for tail in _disjoint_bodies(rest_ids, remaining):
                yield {x: frozenset(combo), **tail}


def _all_port_bijections(pattern: PortGraph, subject: PortGraph,
                         ho_ids: list[str], bodies: dict[str, frozenset[str]]
                         ) -> Iterator[dict[str, dict[int, PortRef]]]:
    """Every per-node bijection of port indices onto the body's free ports.

    Only called for bodies whose free-port count equals the arity.
    """
    slots: list[tuple[str, int, list[PortRef]]] = []
    for x in ho_ids:
        arity = pattern.sig.arity(pattern.label(x))
        iface = subject.induced_full_subgraph(bodies[x]).interface()
        slots.append((x, arity, iface))

    def rec(i: int, acc: dict[str, dict[int, PortRef]]
            ) -> Iterator[dict[str, dict[int, PortRef]]]:
        if i == len(slots):
            yield {x: dict(ports) for x, ports in acc.items()}
            return
        x, arity, iface = slots[i]
        for order in itertools.permutations(iface):
            acc[x] = dict(zip(range(1, arity + 1), order))
            yield from rec(i + 1, acc)
            del acc[x]

    yield from rec(0, {})


def solution_set(morphisms) -> frozenset:
    """Full identity of each match: node map, bodies, port bijections and
    name substitution. Two enumerations agree iff these sets are equal."""
    return frozenset(m.sort_key() for m in morphisms)


def canonical_solution_set(morphisms) -> frozenset:
    """Identity up to port bijections: node map plus body sets only. Useful
    for counting matches when loose ports make bijections multiply."""
    return frozenset(
        (tuple(sorted(m.node_map.items())),
         tuple(sorted((x, tuple(sorted(body, key=node_key)))
                      for x, body in m.body_map.items())))
        for m in morphisms)
