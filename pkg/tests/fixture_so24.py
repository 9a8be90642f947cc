"""Reference data for the extended Bruhat order of SO(2,4)_0: 16 element
names and the 36 covering arrows (upper -> lower), transcribed from the
published incidence diagram."""

NODES = {
    1: "s1 s2 s1 s2",
    2: "s1 s2 s1 s2 s1^2",
    3: "s1 s2 s1 s1^2",
    4: "s2 s1 s2",
    5: "s1 s2 s1^2",
    6: "s2 s1",
    7: "s1 s1^2",
    8: "s2",
    9: "1",
    10: "s1^2",
    11: "s1 s2 s1",
    12: "s2 s1 s2 s1^2",
    13: "s1 s2",
    14: "s2 s1 s1^2",
    15: "s1",
    16: "s2 s1^2",
}

ARROWS = [
    (1, 11), (1, 4), (1, 12),
    (2, 3), (2, 4), (2, 12),
    (3, 13), (3, 5), (3, 6), (3, 14),
    (4, 13), (4, 6),
    (11, 13), (11, 5), (11, 6), (11, 14),
    (12, 5), (12, 14),
    (5, 7), (5, 8), (5, 16),
    (6, 15), (6, 8), (6, 16),
    (13, 15), (13, 8), (13, 16),
    (14, 7), (14, 8), (14, 16),
    (7, 9), (7, 10),
    (8, 9),
    (15, 9), (15, 10),
    (16, 10),
]
