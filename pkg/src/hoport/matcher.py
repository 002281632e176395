"""Matching a pattern graph into a subject graph.

A match assigns:

* to every first-order pattern node one subject node, injectively, driven by
  a per-name substitution: constant labels must reappear verbatim, while a
  first-order variable name is mapped — consistently across all its
  occurrences — to one subject name of equal arity whose interface keeps
  every constant port name in its position;
* to every higher-order pattern node a set of subject nodes whose induced
  full sub-graph exposes exactly as many free ports as the node's arity,
  together with a bijection from the node's 1-based port indices onto those
  free ports.

Subject nodes claimed by distinct pattern nodes never overlap, every pattern
edge must land on a subject edge (first-order endpoints keep their port
index; higher-order endpoints go through the port bijection), and all
occurrences of one higher-order name must capture syntactically equal
sub-graphs in a way that also identifies their port bijections: some
renaming between the two captured sub-graphs must send each port chosen for
index i in one occurrence to the port chosen for i in the other.

``check_morphism`` states these clauses directly and is the single source of
truth for validity. ``find_morphisms`` is a staged backtracking search that
enumerates candidate assignments and verifies every emission against
``check_morphism`` before yielding it.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace
from typing import Iterator, Optional

from .errors import EmptyPattern, FormatError, MatchTimeout, SignatureMismatch
from .portgraph import (
    FO,
    Edge,
    PortGraph,
    PortRef,
    all_equality_witnesses,
    node_key,
)
from .signature import FO_CONSTANT, FO_VARIABLE


@dataclass(frozen=True)
class MatchOptions:
    """Search controls.

    max_solutions: stop after this many matches (None = all).
    enumerate_ho_port_bijections: when a higher-order node has free ports
        that no pattern edge pins down, emit one match per way of pairing
        the remaining port indices with the remaining free ports; with
        False, only the positional pairing is tried.
    timeout_ms: wall-clock budget for the search; MatchTimeout on expiry.
    """

    max_solutions: Optional[int] = None
    enumerate_ho_port_bijections: bool = True
    timeout_ms: Optional[int] = None


@dataclass
class Morphism:
    """One way a pattern embeds in a subject.

    node_map:   first-order pattern node id -> subject node id
    body_map:   higher-order pattern node id -> captured subject node set
    name_subst: first-order variable name -> subject node name
    body_ports: higher-order pattern node id -> {port index -> subject port}
    """

    node_map: dict[str, str]
    body_map: dict[str, frozenset[str]]
    name_subst: dict[str, str]
    body_ports: dict[str, dict[int, PortRef]]

    def image_nodes(self) -> set[str]:
        """Every subject node claimed by the match."""
        out = set(self.node_map.values())
        for body in self.body_map.values():
            out |= body
        return out

    def port_name_subst(self, sig) -> dict[str, dict[str, str]]:
        """Positional port-name substitution induced by name_subst.

        For each mapped variable name, its variable port names are paired
        with the port names at the same positions of the image name.
        """
        out: dict[str, dict[str, str]] = {}
        for src, dst in sorted(self.name_subst.items()):
            pairs = {}
            for p_src, p_dst in zip(sig.interface_of(src), sig.interface_of(dst)):
                if not p_src.is_constant:
                    pairs[p_src.text] = p_dst.text
            out[src] = pairs
        return out

    def sort_key(self):
        return (
            tuple(sorted(self.node_map.items())),
            tuple(sorted((x, tuple(sorted(body, key=node_key)))
                         for x, body in self.body_map.items())),
            tuple(sorted((x, tuple(sorted(ports.items())))
                         for x, ports in self.body_ports.items())),
            tuple(sorted(self.name_subst.items())),
        )

    def to_json(self) -> dict:
        return {
            "fo": dict(sorted(self.node_map.items())),
            "ho": {x: sorted(body, key=node_key)
                   for x, body in sorted(self.body_map.items())},
            "sigma_n": dict(sorted(self.name_subst.items())),
            "tr_ports": {
                x: {str(i): [ref.node, ref.port] for i, ref in sorted(ports.items())}
                for x, ports in sorted(self.body_ports.items())
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Morphism":
        try:
            node_map = {str(k): str(v) for k, v in doc.get("fo", {}).items()}
            body_map = {str(k): frozenset(map(str, v))
                        for k, v in doc.get("ho", {}).items()}
            name_subst = {str(k): str(v) for k, v in doc.get("sigma_n", {}).items()}
            body_ports = {
                str(x): {int(i): PortRef(str(ref[0]), int(ref[1]))
                         for i, ref in ports.items()}
                for x, ports in doc.get("tr_ports", {}).items()
            }
        except (AttributeError, TypeError, ValueError, IndexError) as exc:
            raise FormatError(f"bad morphism document: {exc}") from None
        return cls(node_map, body_map, name_subst, body_ports)


# -- validity ----------------------------------------------------------------


def derive_name_subst(pattern: PortGraph, subject: PortGraph,
                      node_map: dict[str, str]) -> Optional[dict[str, str]]:
    """The name substitution a first-order node map forces, or None if two
    occurrences of one variable name would need different images."""
    subst: dict[str, str] = {}
    for u in sorted(node_map, key=node_key):
        lab = pattern.fo_nodes.get(u)
        if lab is None or pattern.sig.kind(lab) != FO_VARIABLE:
            continue
        target = subject.label(node_map[u])
        if subst.setdefault(lab, target) != target:
            return None
    return subst


def fo_instantiation_violations(pattern: PortGraph, subject: PortGraph,
                                node_map: dict[str, str],
                                name_subst: dict[str, str]) -> list[str]:
    """Per-entry checks of the first-order clause; tolerates partial maps."""
    sig = pattern.sig
    out: list[str] = []
    for u in sorted(node_map, key=node_key):
        w = node_map[u]
        lab = pattern.fo_nodes.get(u)
        if lab is None:
            out.append(f"{u!r} is not a first-order pattern node")
            continue
        if w not in subject:
            out.append(f"image node {w!r} is not in the subject")
            continue
        if subject.node_class(w) != FO:
            out.append(f"image of first-order node {u!r} is higher-order")
            continue
        lab_w = subject.label(w)
        if sig.kind(lab) == FO_CONSTANT:
            if lab_w != lab:
                out.append(f"constant {lab!r} mapped to {lab_w!r} at {u!r}")
            continue
        want = name_subst.get(lab)
        if want is None:
            out.append(f"no substitution entry for variable name {lab!r}")
            continue
        if lab_w != want:
            out.append(f"{u!r} sends {lab!r} to {lab_w!r} but the "
                       f"substitution says {want!r}")
            continue
        d_src, d_dst = sig.decl(lab), sig.decl(lab_w)
        if d_src.arity != d_dst.arity:
            out.append(f"substitution changes the arity of {lab!r}")
            continue
        for pos, (p_src, p_dst) in enumerate(
                zip(d_src.interface, d_dst.interface), start=1):
            if p_src.is_constant and p_src != p_dst:
                out.append(f"substitution for {lab!r} does not keep constant "
                           f"port {p_src.text!r} at position {pos}")
    return out


def coherent_bodies(img_a: PortGraph, ports_a: dict[int, PortRef],
                    img_b: PortGraph, ports_b: dict[int, PortRef]) -> bool:
    """True if some renaming img_a -> img_b sends ports_a onto ports_b
    index by index."""
    for w in all_equality_witnesses(img_a, img_b):
        if all(w.map_port(ports_a[i]) == ports_b[i] for i in ports_a):
            return True
    return False


def ho_instantiation_violations(pattern: PortGraph, subject: PortGraph,
                                body_map: dict[str, frozenset[str]],
                                body_ports: dict[str, dict[int, PortRef]]) -> list[str]:
    """Per-entry checks of the higher-order clause; tolerates partial maps."""
    sig = pattern.sig
    out: list[str] = []
    images: dict[str, PortGraph] = {}
    for x in sorted(body_map, key=node_key):
        lab = pattern.ho_nodes.get(x)
        if lab is None:
            out.append(f"{x!r} is not a higher-order pattern node")
            continue
        body = body_map[x]
        missing = sorted((n for n in body if n not in subject), key=node_key)
        if missing:
            out.append(f"body of {x!r} references missing nodes {missing}")
            continue
        arity = sig.arity(lab)
        img = subject.induced_full_subgraph(body)
        iface = img.interface()
        if len(iface) != arity:
            out.append(f"body of {x!r} exposes {len(iface)} free ports "
                       f"but {lab!r} has arity {arity}")
            continue
        tr = body_ports.get(x)
        if tr is None:
            continue  # absence of the bijection is reported by check_morphism
        if sorted(tr) != list(range(1, arity + 1)):
            out.append(f"port bijection of {x!r} does not cover "
                       f"indices 1..{arity} exactly")
            continue
        vals = list(tr.values())
        if len(set(vals)) != len(vals) or any(r not in iface for r in vals):
            out.append(f"port bijection of {x!r} is not a bijection onto "
                       f"the body's free ports")
            continue
        images[x] = img
    groups: dict[str, list[str]] = {}
    for x in sorted(images, key=node_key):
        groups.setdefault(pattern.ho_nodes[x], []).append(x)
    for name in sorted(groups):
        occurrences = groups[name]
        rep = occurrences[0]
        for other in occurrences[1:]:
            if not coherent_bodies(images[rep], body_ports[rep],
                                   images[other], body_ports[other]):
                out.append(
                    f"occurrences {rep!r} and {other!r} of {name!r} do not "
                    f"capture identical sub-graphs with matching port "
                    f"assignments")
    return out


def injection_violations(node_map: dict[str, str],
                         body_map: dict[str, frozenset[str]]) -> list[str]:
    """No subject node may serve two pattern nodes."""
    out: list[str] = []
    owner: dict[str, str] = {}
    for u in sorted(node_map, key=node_key):
        w = node_map[u]
        if w in owner:
            out.append(f"subject node {w!r} claimed by both {owner[w]!r} and {u!r}")
        else:
            owner[w] = u
    for x in sorted(body_map, key=node_key):
        for n in sorted(body_map[x], key=node_key):
            if n in owner and owner[n] != x:
                out.append(f"subject node {n!r} claimed by both "
                           f"{owner[n]!r} and {x!r}")
            else:
                owner[n] = x
    return out


def edge_preservation_violations(pattern: PortGraph, subject: PortGraph,
                                 m: Morphism) -> list[str]:
    """Every pattern edge must land on a subject edge after translation."""
    out: list[str] = []
    for e in pattern.sorted_edges():
        refs: list[PortRef] = []
        problem = None
        for r in e.ends():
            if r.node in pattern.fo_nodes:
                w = m.node_map.get(r.node)
                if w is None:
                    problem = f"endpoint {r!r} has no image"
                    break
                refs.append(PortRef(w, r.port))
            else:
                ref = m.body_ports.get(r.node, {}).get(r.port)
                if ref is None:
                    problem = f"endpoint {r!r} has no port image"
                    break
                refs.append(ref)
        if problem is not None:
            out.append(f"pattern edge {e.to_pair()}: {problem}")
            continue
        if refs[0] == refs[1]:
            out.append(f"pattern edge {e.to_pair()} collapses onto one subject port")
            continue
        if Edge.make(refs[0], refs[1]) not in subject.edges:
            out.append(f"pattern edge {e.to_pair()} is not preserved: no subject "
                       f"edge joins {refs[0]} and {refs[1]}")
    return out


def check_morphism(pattern: PortGraph, subject: PortGraph, m: Morphism) -> list[str]:
    """All ways ``m`` fails to be a valid match; [] means it is valid."""
    if pattern.sig != subject.sig:
        raise SignatureMismatch("pattern and subject use different signatures")
    sig = pattern.sig
    out: list[str] = []
    if set(m.node_map) != set(pattern.fo_nodes):
        out.append("first-order node map does not cover the pattern's "
                   "first-order nodes exactly")
    if set(m.body_map) != set(pattern.ho_nodes):
        out.append("higher-order body map does not cover the pattern's "
                   "higher-order nodes exactly")
    if set(m.body_ports) != set(pattern.ho_nodes):
        out.append("port bijections do not line up with the higher-order nodes")
    var_names = {lab for lab in pattern.fo_nodes.values()
                 if sig.kind(lab) == FO_VARIABLE}
    if set(m.name_subst) != var_names:
        out.append("substitution keys differ from the pattern's variable names")
    out.extend(fo_instantiation_violations(pattern, subject, m.node_map,
                                           m.name_subst))
    out.extend(ho_instantiation_violations(pattern, subject, m.body_map,
                                           m.body_ports))
    out.extend(injection_violations(m.node_map, m.body_map))
    if not out:
        out.extend(edge_preservation_violations(pattern, subject, m))
    return out


def is_valid_morphism(pattern: PortGraph, subject: PortGraph, m: Morphism) -> bool:
    return not check_morphism(pattern, subject, m)


# -- search ------------------------------------------------------------------


class _Search:
    """Backtracking state for one find_morphisms call.

    Stages, each consuming part of the pattern:
      1. edges between two first-order nodes, constant-labelled ends first;
      2. first-order nodes stage 1 left unassigned;
      3. edges joining a first-order node to a higher-order node — the
         subject partner of the mapped port is forced by linearity, pinning
         one body node and one entry of the port bijection;
      4. edges joining two distinct higher-order nodes — some subject edge
         must run between the two bodies; candidates are enumerated;
      5. each body in turn extends its pinned nodes with unclaimed subject
         nodes, smallest sets first, pruned when the free-port count can no
         longer reach the arity;
      6. unpinned port indices pair with the remaining free ports (all
         bijections, or just the positional one), equal-name occurrences are
         checked for coherence, and the assembled morphism is re-verified.

    An edge between two ports of one higher-order pattern node can never be
    matched: its image would run inside the captured body, where both ports
    stop being free — the search reports no solutions.
    """

    def __init__(self, pattern: PortGraph, subject: PortGraph, options: MatchOptions):
        self.p = pattern
        self.s = subject
        self.opt = options
        self.sig = pattern.sig
        self.deadline = (time.monotonic() + options.timeout_ms / 1000.0
                         if options.timeout_ms is not None else None)

        self.fo_ids = sorted(pattern.fo_nodes, key=node_key)
        self.ho_ids = sorted(pattern.ho_nodes, key=node_key)
        self.s_node_ids = subject.node_ids()
        self.s_edges = subject.sorted_edges()

        self.impossible = False
        fo_fo: list[Edge] = []
        fo_ho: list[Edge] = []
        ho_ho: list[Edge] = []
        for e in pattern.sorted_edges():
            a_fo = e.a.node in pattern.fo_nodes
            b_fo = e.b.node in pattern.fo_nodes
            if a_fo and b_fo:
                fo_fo.append(e)
            elif a_fo or b_fo:
                fo_ho.append(e)
            else:
                if e.a.node == e.b.node:
                    self.impossible = True
                ho_ho.append(e)

        def constant_ends(e: Edge) -> int:
            return sum(1 for r in e.ends()
                       if self.sig.kind(pattern.label(r.node)) == FO_CONSTANT)

        fo_fo.sort(key=lambda e: (-constant_ends(e), e.sort_key()))
        self.fo_fo, self.fo_ho, self.ho_ho = fo_fo, fo_ho, ho_ho

        # mutable search state
        self.node_map: dict[str, str] = {}
        self.name_subst: dict[str, str] = {}
        self.owner: dict[str, str] = {}  # subject node -> claiming pattern node
        self.anchors: dict[str, dict[int, PortRef]] = {x: {} for x in self.ho_ids}
        self.bodies: dict[str, frozenset[str]] = {}
        self._journal: list[tuple[str, str, bool]] = []

    # -- bookkeeping ---------------------------------------------------------

    def tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise MatchTimeout(
                f"no complete enumeration within {self.opt.timeout_ms} ms")

    def compatible_fo(self, u: str, w: str) -> bool:
        if self.s.node_class(w) != FO:
            return False
        lab_u = self.p.label(u)
        lab_w = self.s.label(w)
        if self.sig.kind(lab_u) == FO_CONSTANT:
            return lab_w == lab_u
        bound = self.name_subst.get(lab_u)
        if bound is not None:
            return lab_w == bound
        d_u, d_w = self.sig.decl(lab_u), self.sig.decl(lab_w)
        if d_u.arity != d_w.arity:
            return False
        return all(p_w == p_u for p_u, p_w in zip(d_u.interface, d_w.interface)
                   if p_u.is_constant)

    def try_bind(self, u: str, w: str) -> bool:
        """Claim w as the image of first-order node u; False leaves state as-is."""
        if w in self.owner or not self.compatible_fo(u, w):
            return False
        lab_u = self.p.label(u)
        named = (self.sig.kind(lab_u) == FO_VARIABLE
                 and lab_u not in self.name_subst)
        if named:
            self.name_subst[lab_u] = self.s.label(w)
        self.node_map[u] = w
        self.owner[w] = u
        self._journal.append((u, w, named))
        return True

    def unbind(self) -> None:
        u, w, named = self._journal.pop()
        del self.node_map[u]
        del self.owner[w]
        if named:
            del self.name_subst[self.p.label(u)]

    # -- stages --------------------------------------------------------------

    def run(self) -> Iterator[Morphism]:
        if self.impossible:
            return
        yield from self.stage1(0)

    def stage1(self, k: int) -> Iterator[Morphism]:
        self.tick()
        if k == len(self.fo_fo):
            yield from self.stage2(0)
            return
        e = self.fo_fo[k]
        (u, i), (v, j) = (e.a.node, e.a.port), (e.b.node, e.b.port)
        u_bound, v_bound = u in self.node_map, v in self.node_map
        if u_bound and v_bound:
            image = Edge.make((self.node_map[u], i), (self.node_map[v], j))
            if image in self.s.edges:
                yield from self.stage1(k + 1)
            return
        if u_bound or v_bound:
            if v_bound:
                u, i, v, j = v, j, u, i
            need = self.s.partner((self.node_map[u], i))
            if need is not None and need.port == j and self.try_bind(v, need.node):
                yield from self.stage1(k + 1)
                self.unbind()
            return
        for se in self.s_edges:
            for a, b in (se.ends(), (se.b, se.a)):
                if a.port != i or b.port != j:
                    continue
                if u == v:
                    if a.node != b.node:
                        continue
                    if self.try_bind(u, a.node):
                        yield from self.stage1(k + 1)
                        self.unbind()
                    continue
                if a.node == b.node:
                    continue
                if self.try_bind(u, a.node):
                    if self.try_bind(v, b.node):
                        yield from self.stage1(k + 1)
                        self.unbind()
                    self.unbind()

    def stage2(self, t: int) -> Iterator[Morphism]:
        self.tick()
        while t < len(self.fo_ids) and self.fo_ids[t] in self.node_map:
            t += 1
        if t == len(self.fo_ids):
            yield from self.stage3(0)
            return
        u = self.fo_ids[t]
        for w in self.s_node_ids:
            if self.try_bind(u, w):
                yield from self.stage2(t + 1)
                self.unbind()

    def stage3(self, k: int) -> Iterator[Morphism]:
        self.tick()
        if k == len(self.fo_ho):
            yield from self.stage4(0)
            return
        e = self.fo_ho[k]
        fo_ref, ho_ref = ((e.a, e.b) if e.a.node in self.p.fo_nodes
                          else (e.b, e.a))
        x, idx = ho_ref.node, ho_ref.port
        need = self.s.partner((self.node_map[fo_ref.node], fo_ref.port))
        if need is None:
            return
        holder = self.owner.get(need.node)
        if holder is not None and holder != x:
            return
        if need in self.anchors[x].values():
            return
        fresh = need.node not in self.owner
        if fresh:
            self.owner[need.node] = x
        self.anchors[x][idx] = need
        yield from self.stage3(k + 1)
        del self.anchors[x][idx]
        if fresh:
            del self.owner[need.node]

    def stage4(self, k: int) -> Iterator[Morphism]:
        self.tick()
        if k == len(self.ho_ho):
            yield from self.stage5(0)
            return
        e = self.ho_ho[k]
        (x, i), (y, j) = (e.a.node, e.a.port), (e.b.node, e.b.port)
        for se in self.s_edges:
            for a, b in (se.ends(), (se.b, se.a)):
                if a.node == b.node:
                    continue  # bodies are disjoint; one edge cannot stay inside
                if self.owner.get(a.node) not in (None, x):
                    continue
                if self.owner.get(b.node) not in (None, y):
                    continue
                if a in self.anchors[x].values() or b in self.anchors[y].values():
                    continue
                fresh_a = a.node not in self.owner
                if fresh_a:
                    self.owner[a.node] = x
                fresh_b = b.node not in self.owner
                if fresh_b:
                    self.owner[b.node] = y
                self.anchors[x][i] = a
                self.anchors[y][j] = b
                yield from self.stage4(k + 1)
                del self.anchors[x][i]
                del self.anchors[y][j]
                if fresh_b:
                    del self.owner[b.node]
                if fresh_a:
                    del self.owner[a.node]

    # -- body extension ------------------------------------------------------

    def free_count(self, nodes: set[str]) -> int:
        total = sum(self.s.degree(n) for n in nodes)
        for e in self.s.edges:
            if e.a.node in nodes and e.b.node in nodes:
                total -= 2
        return total

    def add_delta(self, n: str, nodes: set[str]) -> int:
        """Change of the free-port count when n joins ``nodes``."""
        d = self.s.degree(n)
        for ref in self.s.ports(n):
            other = self.s.partner(ref)
            if other is None:
                continue
            if other.node in nodes:
                d -= 2
            elif other.node == n:
                d -= 1  # both ends of a self-node edge are counted this way
        return d

    def body_candidates(self, x: str) -> list[frozenset[str]]:
        """All claimable node sets for x's body: supersets of its anchored
        nodes whose induced sub-graph frees exactly arity ports, smallest
        first, then by node ids."""
        arity = self.sig.arity(self.p.label(x))
        seed = {r.node for r in self.anchors[x].values()}
        pool = [n for n in self.s_node_ids if n not in self.owner]
        found: list[frozenset[str]] = []
        current = set(seed)

        def grow(idx: int, free: int) -> None:
            self.tick()
            if free == arity:
                found.append(frozenset(current))
            best = free + sum(
                max(0, self.add_delta(n, current)) for n in pool[idx:])
            if best < arity:
                return
            for t in range(idx, len(pool)):
                n = pool[t]
                delta = self.add_delta(n, current)
                current.add(n)
                grow(t + 1, free + delta)
                current.discard(n)

        grow(0, self.free_count(current))
        found.sort(key=lambda body: (len(body), sorted(node_key(n) for n in body)))
        return found

    def body_profile(self, body: frozenset[str]) -> tuple:
        return tuple(sorted(self.s.label(n) for n in body))

    def stage5(self, t: int) -> Iterator[Morphism]:
        self.tick()
        if t == len(self.ho_ids):
            yield from self.stage6()
            return
        x = self.ho_ids[t]
        lab = self.p.label(x)
        expected = None
        for prev in self.ho_ids[:t]:
            if self.p.label(prev) == lab:
                expected = self.body_profile(self.bodies[prev])
                break
        for body in self.body_candidates(x):
            if expected is not None and self.body_profile(body) != expected:
                continue  # equal-name occurrences must capture equal bodies
            newly = [n for n in body if n not in self.owner]
            for n in newly:
                self.owner[n] = x
            self.bodies[x] = body
            yield from self.stage5(t + 1)
            del self.bodies[x]
            for n in newly:
                del self.owner[n]

    def stage6(self) -> Iterator[Morphism]:
        self.tick()
        slots: list[tuple[str, dict[int, PortRef], list[int], list[PortRef]]] = []
        for x in self.ho_ids:
            arity = self.sig.arity(self.p.label(x))
            iface = self.s.induced_full_subgraph(self.bodies[x]).interface()
            pinned = self.anchors[x]
            if any(ref not in iface for ref in pinned.values()):
                return  # cannot happen: anchored partners sit outside the body
            loose_idx = [i for i in range(1, arity + 1) if i not in pinned]
            loose_ref = [r for r in iface if r not in pinned.values()]
            slots.append((x, pinned, loose_idx, loose_ref))

        chosen: dict[str, dict[int, PortRef]] = {}

        def assign(i: int) -> Iterator[Morphism]:
            if i == len(slots):
                m = self.finish(chosen)
                if m is not None:
                    yield m
                return
            x, pinned, loose_idx, loose_ref = slots[i]
            if self.opt.enumerate_ho_port_bijections:
                orders = itertools.permutations(loose_ref)
            else:
                orders = iter([tuple(loose_ref)])
            for order in orders:
                ports = dict(pinned)
                ports.update(zip(loose_idx, order))
                chosen[x] = ports
                yield from assign(i + 1)
                del chosen[x]

        yield from assign(0)

    def finish(self, body_ports: dict[str, dict[int, PortRef]]) -> Optional[Morphism]:
        self.tick()
        images = {x: self.s.induced_full_subgraph(self.bodies[x])
                  for x in self.ho_ids}
        groups: dict[str, list[str]] = {}
        for x in self.ho_ids:
            groups.setdefault(self.p.label(x), []).append(x)
        for occurrences in groups.values():
            rep = occurrences[0]
            for other in occurrences[1:]:
                if not coherent_bodies(images[rep], body_ports[rep],
                                       images[other], body_ports[other]):
                    return None
        m = Morphism(dict(self.node_map),
                     {x: self.bodies[x] for x in self.ho_ids},
                     dict(self.name_subst),
                     {x: dict(ports) for x, ports in body_ports.items()})
        problems = check_morphism(self.p, self.s, m)
        if problems:
            raise AssertionError(
                f"search emitted an assignment its own validity check "
                f"rejects: {problems}")
        return m


def find_morphisms(pattern: PortGraph, subject: PortGraph,
                   options: Optional[MatchOptions] = None) -> Iterator[Morphism]:
    """Yield every match of ``pattern`` in ``subject``.

    Emission order is the search's depth-first order — deterministic for
    given inputs, but not sorted; use sorted_morphisms for a canonical
    listing. Raises EmptyPattern for a pattern with no nodes and
    SignatureMismatch when the two graphs disagree on their signature.
    """
    if pattern.sig != subject.sig:
        raise SignatureMismatch("pattern and subject use different signatures")
    if pattern.node_count() == 0:
        raise EmptyPattern("pattern graph has no nodes")
    opts = options if options is not None else MatchOptions()
    count = 0
    for m in _Search(pattern, subject, opts).run():
        yield m
        count += 1
        if opts.max_solutions is not None and count >= opts.max_solutions:
            return


def matches(pattern: PortGraph, subject: PortGraph,
            options: Optional[MatchOptions] = None) -> bool:
    """True if at least one match exists."""
    opts = replace(options if options is not None else MatchOptions(),
                   max_solutions=1)
    return next(find_morphisms(pattern, subject, opts), None) is not None


def sorted_morphisms(pattern: PortGraph, subject: PortGraph,
                     options: Optional[MatchOptions] = None) -> list[Morphism]:
    """All matches in canonical order."""
    return sorted(find_morphisms(pattern, subject, options),
                  key=Morphism.sort_key)
