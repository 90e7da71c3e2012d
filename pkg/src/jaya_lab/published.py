"""Published reference values used by ``jaya-lab reproduce``.

Slot labels follow :mod:`jaya_lab.experiments` (label ``n`` is processed first).
"""

# maximum E(X | n), i.e. p = 1
MAX_WORST_RESCANS = {
    10: 1.593742,
    50: 1.691588,
    100: 1.704813,
    500: 1.715568,
    1500: 1.717376,
    2500: 1.717738,
    3500: 1.717893,
    4500: 1.717979,
    10000: 1.718145,
    20000: 1.718213,
    30000: 1.718236,
    40000: 1.718247,
}

# (function, n) -> (empirical p, empirical E(X), model E(X) at that p); 500 runs x 20 generations
WORST_ENSEMBLES = {
    ("ackley", 10): (0.9230, 1.701, 1.4178),
    ("ackley", 50): (0.9977, 2.0547, 1.6855),
    ("ackley", 100): (0.9985, 2.0786, 1.7008),
    ("ackley", 1000): (0.9996, 2.1632, 1.7158),
    ("rosenbrock", 10): (0.8740, 1.5262, 1.3115),
    ("rosenbrock", 50): (0.9911, 1.9779, 1.6682),
    ("rosenbrock", 100): (0.9956, 2.0029, 1.6931),
    ("rosenbrock", 1000): (0.9988, 2.0514, 1.7137),
    ("chung_reynolds", 10): (0.9335, 1.7408, 1.4411),
    ("chung_reynolds", 50): (0.9987, 2.0366, 1.6882),
    ("chung_reynolds", 100): (0.9994, 2.0508, 1.7032),
    ("chung_reynolds", 1000): (1.0000, 2.0984, 1.7169),
    ("step", 10): (0.9590, 1.8392, 1.4986),
    ("step", 50): (0.9994, 2.0908, 1.6900),
    ("step", 100): (0.9998, 2.1297, 1.7043),
    ("step", 1000): (1.0000, 2.2024, 1.7169),
    ("goldstein_price", 10): (0.5059, 0.6554, 0.6381),
    ("goldstein_price", 50): (0.6286, 0.9442, 0.8677),
    ("goldstein_price", 100): (0.6806, 1.1151, 0.9705),
    ("goldstein_price", 1000): (0.7805, 1.6763, 1.1819),
}

# initial worst-index distribution, n = 10, label -> probability
INITIAL_WORST = {
    10: 0.1024, 9: 0.0954, 8: 0.1012, 7: 0.0970, 6: 0.0976,
    5: 0.0984, 4: 0.0972, 3: 0.1030, 2: 0.1040, 1: 0.1038,
}

# first-generation expected best updates; None marks an entry with no value
BEST_UPDATE_N = (1, 10, 50, 100, 500, 5000, 10000)
BEST_UPDATES = {
    "exponential": (0.3679, 0.3889, 0.3892, 0.3892, 0.3892, 0.3892, 0.3892),
    "logistic": (0.5, 0.4016, 0.3916, 0.3904, 0.3894, 0.3892, 0.3892),
    "normal": (0.5, 0.4451, 0.4261, 0.4212, 0.4136, 0.4074, 0.4061),
    "uniform": (0.5, 0.6688, 0.6882, 0.6907, 0.6926, 0.6931, 0.6931),
}
BEST_UPDATE_LIMITS = {"exponential": 0.3892, "logistic": 0.3892, "normal": None, "uniform": 0.6931}

# (function, n) -> (gen 1, gen 10, gen 20, mean over 20 generations); 500 runs
BEST_ENSEMBLES = {
    ("ackley", 10): (0.916, 0.484, 0.452, 0.5276),
    ("ackley", 50): (0.488, 0.278, 0.184, 0.2882),
    ("ackley", 100): (0.352, 0.216, 0.182, 0.2261),
    ("ackley", 1000): (0.130, 0.156, 0.122, 0.1495),
    ("rosenbrock", 10): (0.650, 0.396, 0.404, 0.445),
    ("rosenbrock", 50): (0.254, 0.230, 0.186, 0.2275),
    ("rosenbrock", 100): (0.206, 0.168, 0.112, 0.1763),
    ("rosenbrock", 1000): (0.052, 0.104, 0.090, 0.0868),
    ("chung_reynolds", 10): (0.854, 0.46, 0.49, 0.5353),
    ("chung_reynolds", 50): (0.418, 0.232, 0.192, 0.2852),
    ("chung_reynolds", 100): (0.300, 0.174, 0.124, 0.2148),
    ("chung_reynolds", 1000): (0.084, 0.146, 0.148, 0.1386),
    ("step", 10): (0.904, 0.506, 0.516, 0.5858),
    ("step", 50): (0.468, 0.276, 0.236, 0.3116),
    ("step", 100): (0.400, 0.222, 0.154, 0.2614),
    ("step", 1000): (0.148, 0.204, 0.106, 0.1836),
    ("goldstein_price", 10): (0.600, 0.170, 0.076, 0.208),
    ("goldstein_price", 50): (0.610, 0.138, 0.058, 0.196),
    ("goldstein_price", 100): (0.620, 0.142, 0.009, 0.1942),
    ("goldstein_price", 1000): (0.588, 0.150, 0.074, 0.1802),
}

# worst-index transitions on Chung-Reynolds (d = 10, n = 10, 10 generations, 5000 runs).
# Rows are the current label 10..1, columns the next label 10..1.
TRANSITION_LABELS = (10, 9, 8, 7, 6, 5, 4, 3, 2, 1)
TRANSITION_MATRIX = (
    (0.042, 0.112, 0.123, 0.108, 0.111, 0.106, 0.101, 0.096, 0.102, 0.098),
    (0.089, 0.047, 0.118, 0.113, 0.117, 0.105, 0.105, 0.104, 0.103, 0.099),
    (0.098, 0.084, 0.042, 0.125, 0.116, 0.113, 0.108, 0.11, 0.104, 0.1),
    (0.099, 0.095, 0.096, 0.045, 0.113, 0.121, 0.118, 0.104, 0.105, 0.105),
    (0.102, 0.096, 0.092, 0.092, 0.048, 0.123, 0.111, 0.119, 0.11, 0.109),
    (0.1, 0.099, 0.097, 0.09, 0.092, 0.041, 0.128, 0.119, 0.121, 0.114),
    (0.11, 0.103, 0.105, 0.098, 0.096, 0.093, 0.04, 0.125, 0.112, 0.119),
    (0.101, 0.112, 0.104, 0.097, 0.102, 0.101, 0.093, 0.048, 0.126, 0.115),
    (0.113, 0.108, 0.105, 0.102, 0.108, 0.095, 0.096, 0.098, 0.046, 0.129),
    (0.114, 0.116, 0.108, 0.106, 0.106, 0.105, 0.101, 0.099, 0.099, 0.046),
)
