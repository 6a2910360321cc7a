"""The example corpus as plain data for the oracle (no bautq imports)."""

# models: name -> (generators, differential {gen: [(coeff, [factors])]})
MODELS = {
    "S4": ([("x", 4), ("y", 7)], {"y": [(1, ["x", "x"])]}),
    "S2": ([("x", 2), ("y", 3)], {"y": [(1, ["x", "x"])]}),
    "S6": ([("x", 6), ("y", 11)], {"y": [(1, ["x", "x"])]}),
    "CP2": ([("x", 2), ("y", 5)], {"y": [(1, ["x", "x", "x"])]}),
    "S3": ([("v1", 3)], {}),
    "Y2": ([("v1", 3), ("v2", 3), ("v3", 5)], {"v3": [(1, ["v1", "v2"])]}),
    "SU6": (
        [("x1", 4), ("x2", 6), ("y1", 7), ("y2", 9), ("y3", 11)],
        {"y1": [(1, ["x1", "x1"])], "y2": [(1, ["x1", "x2"])], "y3": [(1, ["x2", "x2"])]},
    ),
    "Sv": ([("v", 3)], {}),
    "Y5a": (
        [("v1", 2), ("v2", 2), ("v3", 5), ("v4", 5), ("v5", 5)],
        {"v3": [(1, ["v1"] * 3)], "v4": [(1, ["v1", "v1", "v2"])], "v5": [(1, ["v2"] * 3)]},
    ),
    "S3xS3": ([("v1", 3), ("v2", 3)], {}),
    "NonCI": (
        [("x", 6), ("y", 2), ("u", 3), ("p", 7), ("q", 11)],
        {"u": [(1, ["y", "y"])], "p": [(1, ["x", "y"])], "q": [(1, ["x", "x"])]},
    ),
}

# relative models: name -> (base, fiber generators, fiber differential)
RELATIVES = {
    "Hopf": ("S4", [("z", 3)], {"z": [(1, ["x"])]}),
    "Counter1": ("S3", [("w1", 5), ("w2", 7)], {"w2": [(1, ["v1", "w1"])]}),
    "Counter2": ("Y2", [("w1", 7), ("w2", 9)], {"w2": [(1, ["v1", "w1"])]}),
    "SU6F": ("SU6", [("w1", 11), ("w2", 23)], {"w2": [(1, ["x1", "y2", "w1"]), (-1, ["x2", "y1", "w1"])]}),
    "F": ("Sv", [("w1", 3), ("w2", 5)], {"w2": [(1, ["v", "w1"])]}),
    "Ftriv": ("Sv", [("w1", 3), ("w2", 5)], {}),
    "Ex5a": ("Y5a", [("w", 5)], {"w": [(1, ["v1", "v2", "v2"])]}),
    "Ex5b": ("S3xS3", [("w", 5)], {"w": [(1, ["v1", "v2"])]}),
}

# lifting problems: name -> (relative, h_Y(u) as {base gen: [(coeff, factors)]}, its degree)
# all use the 4-cell attached along [u1,u1] with h_X = 0 on u1
PROBLEMS = {
    "CP2": ("F", {"v": [(1, [])]}, 3),
    "CP2triv": ("Ftriv", {"v": [(1, [])]}, 3),
    "Lift5a": ("Ex5a", {}, 3),
    "Lift5b": ("Ex5b", {"v1": [(1, [])]}, 3),
}
