"""Published values used as golden data by the test suite."""

# fixed points and cycles of the base-b elated map, written in base b
REFERENCE_CYCLES = {
    2: ["1"],
    3: ["1", "12", "20 22 121"],
    4: ["1", "20"],
    5: ["1", "13 20"],
    6: ["1", "50 325 310", "53 442 400 144"],
    7: ["1", "13", "22", "505", "2 11"],
    8: ["1", "536", "660", "36 207 152", "5 175 113 13 12"],
    9: ["1", "30", "646", "762"],
    10: ["1", "298", "46 208 136", "26 80 512 150", "33 54 205 58 445 228 144"],
}

# smallest elated number of height k = 2, 3, ..., written in base b
SMALLEST_BY_HEIGHT = {
    2: "11 111 1111111",
    3: "111 1222 12222222222222",
    4: "22 13 122 23 113 3 111 333 3222 31123333333",
    5: "12 3 34 133 3444 3334444444444444444",
    6: "112 233 3233 4555555555",
    7: "1112 1266666666666",
    8: "2 11 47 32 15 75 55 277 57 146 35 367 2577 76677",
    9: "122 5 12 113 1666 527788",
    10: "13 51 67 97 668 77 746 92 717 5369 8888999999",
}

# base 10, k = 0..12
EPSILON_10 = [1, 10, 13, 51, 67, 97, 668, 77, 746, 92, 717, 5369, 8888999999]

# (a*, C) for b = 3..10
BASE_CONSTANTS = {3: (3, 0), 4: (16, 1), 5: (31, 1), 6: (128, 5), 7: (191, 5), 8: (324, 6), 9: (368, 5), 10: (561, 6)}

# shortest fully basic preimage sets in base 10
PREIMAGES_10 = {
    487: {1999999},
    488: {6889999},
    529: {88888889},
    534: {18899999, 47899999},
    543: {57899999},
    546: {88888899},
    549: {48899999},
    557: {378888999, 458889999, 466899999},
    561: {157999999, 368889999, 377799999, 555999999, 788888888},
    564: {188888999, 257999999, 478888999, 567799999},
    567: {9999999},
}


def smallest_by_height(b):
    """{k: value} from the base-b strings above."""
    return {k: int(w, b) for k, w in enumerate(SMALLEST_BY_HEIGHT[b].split(), start=2)}
