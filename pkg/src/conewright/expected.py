"""Published values that `conewright check` reproduces.

Each constant names the invariant it records. Values are integers; divisor pairs are `(a, b)` for `aL + bH`.
"""

CASES = ('v4', 'v5', 'gr24')

# Intersection numbers of X_F: L^3, L^2H, LH^2, H^3, c2.L, c2.H, number of nodes of D_n(sigma).
TABLE1 = {
    'v4': (80, 48, 26, 12, 104, 60, 26),
    'v5': (110, 63, 33, 15, 116, 66, 29),
    'gr24': (85, 45, 21, 8, 106, 56, 41),
}

# Topological Euler number and h^{2,1} of X_F.
TABLE2 = {
    'v4': (-92, 48),
    'v5': (-92, 48),
    'gr24': (-94, 49),
}

# Intersection numbers of the flop X_F^+ of the V5 case (same columns as TABLE1).
TABLE3 = {'v5': (34, 23, 13, 5, 76, 50, 54)}

# Euler number of a smooth anticanonical hypersurface of M.
ANTICANONICAL_EULER = {'v4': -144, 'v5': -150, 'gr24': -176}

# L_E.H_E^2 and L_E^2.H_E on the dual side X_E.
DUAL_SIDE = {'v4': (10, 0), 'v5': (12, 0), 'gr24': (11, 5)}

# Image of L under the determinantal flop, in the basis (L_E, H_E): (-1, Fano index).
CHI_SOLUTION = {'v4': (-1, 3), 'v5': (-1, 3), 'gr24': (-1, 4)}

# Image of L' under the flop X_F^+ -> X_F.
FLOP_SOLUTION = {'v5': (5, -6), 'gr24': (5, -6)}

# Involution of the V4 case: H.(L-H)^2 and the matrix rows.
INVOLUTION = {'a': 8, 'rows': ((9, 8), (-10, -9))}

# Intersection numbers L'^3, L'^2H', L'H'^2, H'^3 of the flop of the Gr(2,4) case on the blown-up P4.
BLOWUP_TRIPLES = (47, 28, 14, 5)

# Walls of the movable cone, counterclockwise.
WALLS = {
    'v4': ((15, -17), (8, -9), (1, -1), (0, 1), (-1, 3)),
    'v5': ((4, -5), (9, -11), (1, -1), (0, 1), (-1, 3)),
    'gr24': ((4, -5), (1, -1), (0, 1), (-1, 4)),
}

# Degeneracy loci: the integral of D_1 of O^2 -> V(1) on P3 (a plane count), and the degree of Sigma on P4.
PORTEOUS = {'planes': 14, 'sigma_degree': 2}

# Fibre invariants checked by birat.fiber_invariant_checks. The V5 singular-point counts 1 and 29 tell the
# contractions of X_F^++ and X_E apart, as H'^3 = 5 and deg D_n = 8 do for the Gr(2,4) case.
FIBRES = {
    'v4': {'c2.L_E': 24, '(L-H)^3': 2},
    'v5': {'c2.L_E': 24, 'c2(T).c2(F)': 53, "c2.(L'-H') on X_F^++": 24,
           'singular points of Z_F': 1, 'nodes of D_1(sigma)': 29},
    'gr24': {'L_E^2.H_E': 5, "(L'-H')^2.H'": 5, "H'^3": 5, 'deg D_n': 8},
}
