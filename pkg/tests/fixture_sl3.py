"""Reference data for the extended Bruhat order of SL(3,R): the 24 element
names, the 64 covering arrows (upper -> lower), the six U_H cosets for
Theta = {1} with their exact memberships, the 8 quotient arrows, and the
control-set data for U(S) = <s1>.

Element names are expression strings over the generators; arrows were
transcribed node-for-node from the published incidence diagram of the 24
Schubert cells of SO(3) and are trusted as ground truth.
"""

NODES = {
    1: "s1 s2 s1",
    2: "s1 s2 s1 s1^2",
    3: "s1 s2 s1 s2^2",
    4: "s1 s2 s1 s1^2 s2^2",
    5: "s1 s2 s2^2",
    6: "s1 s2 s1^2 s2^2",
    7: "s2 s1",
    8: "s2 s1 s1^2",
    9: "s1 s2^2",
    10: "s1 s1^2 s2^2",
    11: "s2",
    12: "s2 s1^2",
    13: "1",
    14: "s1^2",
    15: "s2^2",
    16: "s1^2 s2^2",
    17: "s1 s2 s1^2",
    18: "s1 s2",
    19: "s2 s1 s2^2",
    20: "s2 s1 s1^2 s2^2",
    21: "s1 s1^2",
    22: "s1",
    23: "s2 s2^2",
    24: "s2 s1^2 s2^2",
}

# (upper, lower) pairs; 64 arrows
ARROWS = [
    (1, 18), (1, 17), (1, 7), (1, 19),
    (2, 18), (2, 17), (2, 8), (2, 20),
    (3, 5), (3, 6), (3, 7), (3, 19),
    (4, 5), (4, 6), (4, 8), (4, 20),
    (18, 22), (18, 9), (18, 11), (18, 24),
    (17, 21), (17, 10), (17, 12), (17, 23),
    (5, 22), (5, 9), (5, 12), (5, 23),
    (6, 21), (6, 10), (6, 11), (6, 24),
    (7, 22), (7, 10), (7, 11), (7, 12),
    (8, 21), (8, 9), (8, 11), (8, 12),
    (19, 21), (19, 9), (19, 23), (19, 24),
    (20, 22), (20, 10), (20, 23), (20, 24),
    (22, 13), (21, 13), (11, 13), (23, 13),
    (22, 14), (21, 14), (12, 14), (24, 14),
    (9, 15), (10, 15), (11, 15), (23, 15),
    (9, 16), (10, 16), (12, 16), (24, 16),
]

# U_H \ U for Theta = {1}: exact memberships
MORSE_COSETS = {
    "U_H": ["1", "s1", "s1^2", "s1^3"],
    "U_H s2^2": ["s2^2", "s1 s2^2", "s1^2 s2^2", "s1^3 s2^2"],
    "U_H s2": ["s2", "s1 s2", "s2 s1^2 s2^2", "s1 s2 s1^2 s2^2"],
    "U_H s2 s1^2": ["s2 s1^2", "s1 s2 s1^2", "s2^3", "s1 s2^3"],
    "U_H s2 s1": ["s2 s1", "s1 s2 s1", "s2 s1 s2^2", "s1 s2 s1 s2^2"],
    "U_H s2 s1^3": ["s2 s1^3", "s1 s2 s1^3", "s2 s1^3 s2^2", "s1 s2 s1^3 s2^2"],
}

# quotient arrows (upper class -> lower class), labeled by the keys above
MORSE_ARROWS = [
    ("U_H s2 s1", "U_H s2"),
    ("U_H s2 s1", "U_H s2 s1^2"),
    ("U_H s2 s1^3", "U_H s2"),
    ("U_H s2 s1^3", "U_H s2 s1^2"),
    ("U_H s2", "U_H"),
    ("U_H s2", "U_H s2^2"),
    ("U_H s2 s1^2", "U_H"),
    ("U_H s2 s1^2", "U_H s2^2"),
]

# control sets for U(S) = <s1>: the 8 forward arrows D(a) -> D(b), each
# asserting that the control set of a strictly precedes the control set of b
CONTROL_FORWARD_ARROWS = [
    ("s2 s1", "s2"),
    ("s2 s1", "s2 s1^2"),
    ("s2 s1^3", "s2"),
    ("s2 s1^3", "s2 s1^2"),
    ("s2", "1"),
    ("s2", "s2^2"),
    ("s2 s1^2", "1"),
    ("s2 s1^2", "s2^2"),
]

# pairs left open by the machinery (possibly related, never resolved)
UNDETERMINED_PAIRS = [
    ("s2", "s2 s1^2"),
    ("s2 s1", "s2 s1^3"),
]
