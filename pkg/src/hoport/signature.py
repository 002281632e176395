"""Port-graph signatures.

A signature declares every node name that may label a node, split into three
disjoint classes: first-order constants, first-order variables, and
higher-order variables. Each name carries an ordered interface of port names;
a node's ports are addressed by 1-based position in that list. Port names are
themselves constant or variable, and the two port namespaces are disjoint
(the kind is part of a port name's identity).

Class rules:
  fo_constant  ports all constant
  fo_variable  ports constant or variable, mixed freely
  ho_variable  ports all variable

Port names are scoped per node name: the same text may appear in several
interfaces without any link between the occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArityMismatch, DuplicateName, FormatError, KindInterfaceMismatch, UnknownName

FO_CONSTANT = "fo_constant"
FO_VARIABLE = "fo_variable"
HO_VARIABLE = "ho_variable"

NODE_KINDS = (FO_CONSTANT, FO_VARIABLE, HO_VARIABLE)
PORT_KINDS = ("constant", "variable")


@dataclass(frozen=True)
class PortName:
    """A port name: text plus constant/variable kind."""

    text: str
    kind: str  # "constant" | "variable"

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"


def cport(text: str) -> PortName:
    return PortName(text, "constant")


def vport(text: str) -> PortName:
    return PortName(text, "variable")


@dataclass(frozen=True)
class NodeNameDecl:
    """Declaration of one node name: kind, arity and ordered interface."""

    name: str
    kind: str  # one of NODE_KINDS
    interface: tuple[PortName, ...]
    arity: int = -1  # -1 means "derive from the interface"

    def __post_init__(self):
        if self.arity < 0:
            object.__setattr__(self, "arity", len(self.interface))


def _decl_diagnostics(decl: NodeNameDecl) -> list["Diagnostic"]:
    out = []
    if not decl.name:
        out.append(Diagnostic("empty_name", decl.name, "node name must be nonempty"))
    if decl.kind not in NODE_KINDS:
        out.append(Diagnostic("unknown_kind", decl.name, f"unknown node kind {decl.kind!r}"))
    if decl.arity != len(decl.interface):
        out.append(Diagnostic(
            "arity_mismatch", decl.name,
            f"arity {decl.arity} but interface has {len(decl.interface)} ports"))
    seen = set()
    for p in decl.interface:
        if not p.text:
            out.append(Diagnostic("empty_port_name", decl.name, "port name must be nonempty"))
        if p.kind not in PORT_KINDS:
            out.append(Diagnostic("unknown_kind", decl.name, f"unknown port kind {p.kind!r}"))
        if (p.text, p.kind) in seen:
            out.append(Diagnostic(
                "non_injective_interface", decl.name,
                f"port name {p.text!r} repeated in interface"))
        seen.add((p.text, p.kind))
        if decl.kind == FO_CONSTANT and not p.is_constant:
            out.append(Diagnostic(
                "kind_interface_mismatch", decl.name,
                f"constant name {decl.name!r} has variable port {p.text!r}"))
        if decl.kind == HO_VARIABLE and p.is_constant:
            out.append(Diagnostic(
                "kind_interface_mismatch", decl.name,
                f"higher-order name {decl.name!r} has constant port {p.text!r}"))
    return out


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding. Severity is "error" unless stated otherwise."""

    code: str
    subject: str
    message: str
    severity: str = "error"

    def to_json(self) -> dict:
        return {"code": self.code, "subject": self.subject,
                "message": self.message, "severity": self.severity}


@dataclass(frozen=True, eq=True)
class PSignature:
    """An immutable set of node-name declarations, keyed by name.

    Name-class disjointness is structural: one dict, one entry per name.
    """

    decls: dict[str, NodeNameDecl] = field(default_factory=dict)

    def declare(self, decl: NodeNameDecl) -> "PSignature":
        """Return a new signature extended with ``decl``.

        Raises on duplicate names or an internally inconsistent declaration;
        use validate() to collect findings on hand-built signatures instead.
        """
        if decl.name in self.decls:
            raise DuplicateName(f"name {decl.name!r} already declared", name=decl.name)
        problems = _decl_diagnostics(decl)
        for d in problems:
            if d.code == "arity_mismatch":
                raise ArityMismatch(d.message, name=decl.name)
        for d in problems:
            if d.code == "kind_interface_mismatch":
                raise KindInterfaceMismatch(d.message, name=decl.name)
        if problems:
            raise FormatError(problems[0].message, name=decl.name)
        new = dict(self.decls)
        new[decl.name] = decl
        return PSignature(new)

    def declare_all(self, decls) -> "PSignature":
        sig = self
        for d in decls:
            sig = sig.declare(d)
        return sig

    def validate(self) -> list[Diagnostic]:
        """Check every declaration; [] means the signature is well-formed."""
        out = []
        for name in sorted(self.decls):
            out.extend(_decl_diagnostics(self.decls[name]))
        return out

    def __contains__(self, name: str) -> bool:
        return name in self.decls

    def decl(self, name: str) -> NodeNameDecl:
        try:
            return self.decls[name]
        except KeyError:
            raise UnknownName(f"name {name!r} not declared", name=name) from None

    def interface_of(self, name: str) -> tuple[PortName, ...]:
        """Ordered interface of ``name``; position in it is the port index."""
        return self.decl(name).interface

    def arity(self, name: str) -> int:
        return self.decl(name).arity

    def kind(self, name: str) -> str:
        return self.decl(name).kind

    def is_fo(self, name: str) -> bool:
        return self.decl(name).kind in (FO_CONSTANT, FO_VARIABLE)

    def is_variable_name(self, name: str) -> bool:
        return self.decl(name).kind == FO_VARIABLE

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "name": d.name,
                    "kind": d.kind,
                    "ports": [{"name": p.text, "kind": p.kind} for p in d.interface],
                }
                for _, d in sorted(self.decls.items())
            ]
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PSignature":
        if not isinstance(doc, dict) or "nodes" not in doc:
            raise FormatError("signature document must be an object with a 'nodes' array")
        sig = cls()
        for entry in doc["nodes"]:
            try:
                ports = tuple(PortName(p["name"], p["kind"]) for p in entry.get("ports", []))
                decl = NodeNameDecl(entry["name"], entry["kind"], ports)
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad signature entry: {exc}") from None
            sig = sig.declare(decl)
        return sig
