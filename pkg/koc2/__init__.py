"""
Exact Ext computations over the motivic and equivariant subalgebras A(1)
and E(1) of the Steenrod algebra, with the rho-Bockstein spectral
sequence, Massey products, homotopy orders and charts built on top.
"""

__version__ = '1.1'
