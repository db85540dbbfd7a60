"""Quantum alcove model, quantum Bruhat graphs and Chevalley formulas."""

from .rootsys import RootSystem, WeylElt, build_root_system, min_coset_rep, weyl_act

__all__ = ["RootSystem", "WeylElt", "build_root_system", "min_coset_rep", "weyl_act"]
