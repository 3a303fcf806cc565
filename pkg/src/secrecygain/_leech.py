"""Gram matrix of the Leech lattice.

Obtained from the extended Golay code construction (generators 2c for
codewords c, 4e_i - 4e_j, 8e_i and (-3, 1^23), all scaled by 1/sqrt(8)),
followed by LLL reduction; every basis vector has norm 4.
"""

LEECH_GRAM = (
    ( 4,  2,  2,  2,  1,  2,  2,  2,  2,  2, -1, -2,  1, -2,  1, -2,  0,  1, -1, -1,  0,  2,  1, -1),
    ( 2,  4,  2,  2,  2,  2,  1,  0,  0,  1,  1, -2,  1, -2,  2, -2,  0, -1, -2, -1,  1,  0,  2, -2),
    ( 2,  2,  4,  2,  2,  1,  2,  1,  0,  0,  1, -1,  2, -2,  0, -2, -1,  0,  0, -2, -1,  2,  0,  0),
    ( 2,  2,  2,  4,  0,  0,  1,  1,  0,  2, -1, -2,  2, -1,  0, -2,  1,  1, -2, -2,  1,  2,  0, -1),
    ( 1,  2,  2,  0,  4,  2,  2, -1,  1,  0,  2, -1,  0, -1,  0,  0,  0, -2,  0, -1, -1,  0,  0,  0),
    ( 2,  2,  1,  0,  2,  4,  2,  1,  2,  1,  1, -1, -1, -2,  2, -1, -1, -1, -1, -1, -1,  0,  1,  0),
    ( 2,  1,  2,  1,  2,  2,  4,  0,  1,  1,  1, -1,  0, -1,  0,  0, -1, -1, -1, -2, -2,  2,  0,  0),
    ( 2,  0,  1,  1, -1,  1,  0,  4,  1,  1, -1, -1,  0, -2,  1, -2, -1,  2,  0,  0,  0,  1,  0,  1),
    ( 2,  0,  0,  0,  1,  2,  1,  1,  4,  2, -1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1,  0,  1),
    ( 2,  1,  0,  2,  0,  1,  1,  1,  2,  4, -2, -2,  1, -1,  1, -1,  1,  1, -1,  0,  1,  1,  0, -1),
    (-1,  1,  1, -1,  2,  1,  1, -1, -1, -2,  4,  1, -1,  0,  0,  1, -1, -2,  0, -1, -1, -1,  0,  1),
    (-2, -2, -1, -2, -1, -1, -1, -1,  0, -2,  1,  4, -1,  2, -1,  2, -1, -1,  1,  0, -1, -1,  0,  2),
    ( 1,  1,  2,  2,  0, -1,  0,  0,  0,  1, -1, -1,  4,  0,  0, -2,  0,  1,  0,  0,  1,  2,  0, -1),
    (-2, -2, -2, -1, -1, -2, -1, -2,  0, -1,  0,  2,  0,  4, -2,  2,  1, -1,  0,  1,  0,  0, -1,  1),
    ( 1,  2,  0,  0,  0,  2,  0,  1,  0,  1,  0, -1,  0, -2,  4, -2, -1,  0, -1,  1,  1, -1,  2, -1),
    (-2, -2, -2, -2,  0, -1,  0, -2,  0, -1,  1,  2, -2,  2, -2,  4,  0, -1,  1,  0, -1, -1, -1,  1),
    ( 0,  0, -1,  1,  0, -1, -1, -1,  0,  1, -1, -1,  0,  1, -1,  0,  4,  1,  0,  0,  1,  0, -1, -1),
    ( 1, -1,  0,  1, -2, -1, -1,  2,  0,  1, -2, -1,  1, -1,  0, -1,  1,  4,  1,  0,  1,  1, -1,  0),
    (-1, -2,  0, -2,  0, -1, -1,  0,  0, -1,  0,  1,  0,  0, -1,  1,  0,  1,  4,  1, -1,  0, -2,  1),
    (-1, -1, -2, -2, -1, -1, -2,  0,  0,  0, -1,  0,  0,  1,  1,  0,  0,  0,  1,  4,  1, -1,  0,  0),
    ( 0,  1, -1,  1, -1, -1, -2,  0,  0,  1, -1, -1,  1,  0,  1, -1,  1,  1, -1,  1,  4, -1,  1, -1),
    ( 2,  0,  2,  2,  0,  0,  2,  1,  1,  1, -1, -1,  2,  0, -1, -1,  0,  1,  0, -1, -1,  4, -1,  0),
    ( 1,  2,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0, -1,  2, -1, -1, -1, -2,  0,  1, -1,  4, -2),
    (-1, -2,  0, -1,  0,  0,  0,  1,  1, -1,  1,  2, -1,  1, -1,  1, -1,  0,  1,  0, -1,  0, -2,  4),
)
