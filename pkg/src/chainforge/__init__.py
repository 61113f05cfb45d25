"""chainforge: finite approximations of countable ultrahomogeneous graphs
and maximal chains of isomorphic copies realizing prescribed order types."""

__version__ = "0.1.0"

__all__ = [
    "chains",
    "cli",
    "compactsets",
    "forcing",
    "gmunu",
    "graphs",
    "henson",
    "ordercore",
    "qline",
]
