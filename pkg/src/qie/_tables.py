"""Embedded diagram tables for the bundled link family.

Crossing tuples are (result, under_in, over, sign): the arc `result` is the
under-strand leaving the crossing, satisfying
result = under_in > over (sign +1) or result = under_in >^-1 over (sign -1).

HOPF_SUM_CROSSINGS is the 4-crossing connected sum of two Hopf links.
ASLINK1/ASLINK2 are the first two links of the Allen-Swenberg series. Two
rows of the widely circulated 45-row table for the first link are corrupted;
the rows embedded here are the corrected ones (provenance and evidence:
/root/notes/decisions.md, entry D3).

ASLINK_BLOCK is the 40-crossing tangle block replicated to build the n-th
link of the series: interior arcs 48..85 shift by 40 per extra copy, arc 47
is the block's inbound connector, 46 the outbound one, and the rows that
mention arcs 3 / 27 chain to the next copy's connectors (or close the
diagram on the last copy).

EXTENSION_SOURCE maps each arc of the second link to the arc of the first
link whose color it receives under the image-preserving coloring extension;
interior arcs of further copies reuse the same sources shifted by 40.
"""

HOPF_SUM_CROSSINGS = (
    (2, 3, 1, 1), (3, 2, 4, 1), (1, 1, 3, 1), (4, 4, 3, 1),
)

ASLINK1_CROSSINGS = (
    (2, 1, 26, 1), (26, 27, 1, 1), (1, 2, 3, 1), (3, 4, 1, 1),
    (4, 5, 3, 1), (5, 6, 7, 1), (8, 7, 6, 1), (28, 29, 6, -1),
    (6, 3, 28, -1), (9, 8, 7, 1), (7, 10, 9, 1), (11, 9, 10, 1),
    (10, 12, 11, 1), (13, 11, 12, 1), (12, 14, 13, 1), (15, 19, 14, -1),
    (22, 15, 13, 1), (20, 16, 14, 1), (16, 21, 13, -1), (14, 17, 21, 1),
    (18, 13, 21, -1), (17, 20, 22, -1), (19, 18, 22, 1), (21, 23, 20, 1),
    (24, 22, 20, -1), (23, 26, 19, -1), (25, 24, 19, 1), (30, 28, 29, 1),
    (29, 31, 30, 1), (32, 30, 31, 1), (31, 33, 32, 1), (34, 32, 33, 1),
    (33, 35, 34, 1), (36, 40, 35, -1), (38, 36, 34, 1), (41, 37, 35, 1),
    (37, 39, 34, -1), (35, 42, 39, 1), (43, 34, 39, -1), (42, 41, 38, -1),
    (40, 43, 38, 1), (44, 25, 40, -1), (39, 44, 41, 1), (27, 45, 40, 1),
    (45, 38, 41, -1),
)

ASLINK2_CROSSINGS = (
    (2, 1, 26, 1), (26, 27, 1, 1), (1, 2, 3, 1), (3, 4, 1, 1),
    (4, 5, 3, 1), (5, 6, 7, 1), (8, 7, 6, 1), (28, 29, 6, -1),
    (6, 47, 28, -1), (9, 8, 7, 1), (7, 10, 9, 1), (11, 9, 10, 1),
    (10, 12, 11, 1), (13, 11, 12, 1), (12, 14, 13, 1), (15, 19, 14, -1),
    (22, 15, 13, 1), (20, 16, 14, 1), (16, 21, 13, -1), (14, 17, 21, 1),
    (18, 13, 21, -1), (17, 20, 22, -1), (19, 18, 22, 1), (21, 23, 20, 1),
    (24, 22, 20, -1), (23, 26, 19, -1), (25, 24, 19, 1), (30, 28, 29, 1),
    (29, 31, 30, 1), (32, 30, 31, 1), (31, 33, 32, 1), (34, 32, 33, 1),
    (33, 35, 34, 1), (36, 40, 35, -1), (38, 36, 34, 1), (41, 37, 35, 1),
    (37, 39, 34, -1), (35, 42, 39, 1), (43, 34, 39, -1), (42, 41, 38, -1),
    (40, 43, 38, 1), (44, 25, 40, -1), (39, 44, 41, 1), (46, 45, 40, 1),
    (45, 38, 41, -1), (47, 67, 48, 1), (49, 48, 67, 1), (68, 69, 67, -1),
    (67, 3, 68, -1), (50, 49, 48, 1), (48, 51, 50, 1), (52, 50, 51, 1),
    (51, 53, 52, 1), (54, 52, 53, 1), (53, 55, 54, 1), (56, 58, 55, -1),
    (61, 56, 54, 1), (59, 57, 55, 1), (57, 60, 54, -1), (55, 62, 60, 1),
    (63, 54, 60, -1), (62, 59, 61, -1), (58, 63, 61, 1), (64, 46, 58, -1),
    (60, 64, 59, 1), (66, 65, 58, 1), (65, 61, 59, -1), (70, 68, 69, 1),
    (69, 71, 70, 1), (72, 70, 71, 1), (71, 73, 72, 1), (74, 72, 73, 1),
    (73, 75, 74, 1), (76, 78, 75, -1), (81, 76, 74, 1), (79, 77, 75, 1),
    (77, 80, 74, -1), (75, 82, 80, 1), (83, 74, 80, -1), (82, 79, 81, -1),
    (78, 83, 81, 1), (84, 66, 78, -1), (80, 84, 79, 1), (27, 85, 78, 1),
    (85, 81, 79, -1),
)

ASLINK_BLOCK = ASLINK2_CROSSINGS[45:]

# arc -> source arc in the first link (1-based, arcs 1..85 of the second link)
EXTENSION_SOURCE = (
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15,
    16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30,
    31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43, 44, 45,
    26, 5, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 19, 20, 21,
    22, 17, 18, 23, 24, 25, 6, 28, 29, 30, 31, 32, 33, 34, 35,
    36, 37, 40, 41, 39, 38, 42, 43, 44, 45,
)
