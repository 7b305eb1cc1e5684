"""Exact commutation geometry of composite-dimension Pauli operators.

Submodules: :mod:`qrg.rings` (finite product rings), :mod:`qrg.projline`
(R^2, free cyclic submodules, P1(R)), :mod:`qrg.pauli` (operators and the
monomial-matrix oracle), :mod:`qrg.graph` (Pauli graph, maximal cliques),
:mod:`qrg.isomatch` (incidence vs ring-line isomorphism), :mod:`qrg.mub`
(distant-point cliques) and :mod:`qrg.cli`.
"""

__version__ = "0.1.0"
