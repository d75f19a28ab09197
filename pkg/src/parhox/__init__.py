"""parhox: exact-arithmetic verification toolkit for twisted partial group
algebras, partial crossed products, and their Hochschild / partial group
(co)homology."""

__version__ = "0.1.0"
