import pytest

from hoport import NodeNameDecl, PSignature, cport, vport


@pytest.fixture(scope="session")
def tiny_sig() -> PSignature:
    """Two unary constants, a unary fo variable, a binary ho variable."""
    return PSignature().declare_all([
        NodeNameDecl("A", "fo_constant", (cport("a"),)),
        NodeNameDecl("B", "fo_constant", (cport("b"),)),
        NodeNameDecl("X", "fo_variable", (vport("x"),)),
        NodeNameDecl("Xh", "ho_variable", (vport("y"), vport("z"))),
    ])
