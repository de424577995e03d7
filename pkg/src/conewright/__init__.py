"""conewright is a Python package for exact intersection theory on determinantal Calabi-Yau threefolds. It computes
intersection numbers, Chern classes and Hodge data from presentations of Chow rings, recovers the integer matrices of
flops from the invariance of triple intersection numbers, and assembles the movable cones of the resulting minimal
models from the nef cones of their chambers.

All arithmetic is exact: ring coefficients are `fractions.Fraction`s and the linear algebra on degree slices is done
by `sympy` over the rationals.

## Modules
The package is split into layers, each depending only on the ones above it:

* gradedring
    * RingPresentation, RingClass, RingMap
    * add, scale, mul, component, inverse, integrate
* chern
    * BundleExpr
    * whitney_sum, dual, tensor, twist_by_line, exterior_top_minus_one, pullback
* spaces
    * SpaceModel
    * catalog_get, catalog_names, pushforward_check
* detcy
    * DetPairConfig, InvariantRow
    * triple_products, c2_pairings, odp_count, porteous_class, cy_hodge
* birat
    * Div2, Map2
    * pushforward_solve, flop_matrix, assemble_chambers
* report, expected
    * RunReport, CheckItem and the reference values they are checked against
* cli
    * the `conewright` command

## Command Line
Installing the package provides the `conewright` command (also `python -m conewright`):

    conewright table1
    conewright table2 --json
    conewright cone --case gr24
    conewright space --space V5
    conewright check --all --out report.json

`check` exits with 0 when every computed value equals its reference, 1 on a mismatch, 2 if a computation fails and
64 on a usage error.

## Library Use
Computing the intersection numbers of the V5 case directly:

    from conewright.detcy import determinantal_pair, invariant_row

    row = invariant_row(determinantal_pair('v5'))
    row.values()  # (110, 63, 33, 15, 116, 66, 29)
"""
