"""Published reference values used as test oracles."""

# Convergence table for d = 13, rho = 4/5, b = ones, x0 = 0.
# Entry (it, ||r||, q): row ``it`` lists ||r_(it-1)|| and q_(it-1); q is missing
# in the final printed row of each column.
TABLE21 = {
    1: [
        (1, 3.6056, 0.6247),
        (2, 2.2524, 0.7533),
        (3, 1.6967, 0.7832),
        (4, 1.3289, 0.7935),
        (5, 1.0544, 0.7974),
        (6, 0.8407, 0.7989),
        (7, 0.6717, 0.7996),
        (8, 0.5371, 0.7998),
        (9, 0.4296, 0.7999),
        (10, 0.3436, None),
    ],
    2: [
        (1, 3.6056, 0.6247),
        (2, 2.2524, 0.7156),
        (3, 1.6118, 0.7768),
        (4, 1.252, 0.7919),
        (5, 0.9915, 0.7958),
        (6, 0.7891, 0.7985),
        (7, 0.6301, 0.7993),
        (8, 0.5036, 0.7997),
        (9, 0.4028, 0.7999),
        (10, 0.3222, None),
    ],
    3: [
        (1, 3.6056, 0.6247),
        (2, 2.2524, 0.7156),
        (3, 1.6118, 0.7533),
        (4, 1.2141, 0.7873),
        (5, 0.9559, 0.7957),
        (6, 0.7606, 0.7984),
        (7, 0.6073, 0.799),
        (8, 0.4852, 0.7996),
        (9, 0.388, 0.7999),
        (10, 0.3103, None),
    ],
    4: [
        (1, 3.6056, 0.6247),
        (2, 2.2524, 0.7156),
        (3, 1.6118, 0.7533),
        (4, 1.2141, 0.7725),
        (5, 0.9379, 0.7927),
        (6, 0.7435, 0.7975),
        (7, 0.5929, 0.7991),
        (8, 0.4738, 0.7996),
        (9, 0.3789, 0.7997),
        (10, 0.303, None),
    ],
    5: [
        (5, 0.9379, 0.7832),
        (6, 0.7346, 0.7956),
        (7, 0.5844, 0.7985),
        (8, 0.4667, 0.7995),
        (9, 0.3731, 0.7998),
        (10, 0.2984, 0.7999),
        (11, 0.2387, 0.7999),
        (12, 0.1909, 0.8),
        (13, 0.1528, 0.7999),
        (14, 0.1222, None),
    ],
    7: [
        (5, 0.9379, 0.7832),
        (6, 0.7346, 0.7896),
        (7, 0.58, 0.7935),
        (8, 0.4602, 0.7983),
        (9, 0.3674, 0.7995),
        (10, 0.2937, 0.7998),
        (11, 0.2349, 0.7999),
        (12, 0.1879, 0.8),
        (13, 0.1503, 0.7944),
        (14, 0.1194, None),
    ],
    9: [
        (5, 0.9379, 0.7832),
        (6, 0.7346, 0.7896),
        (7, 0.58, 0.7935),
        (8, 0.4602, 0.7959),
        (9, 0.3663, 0.7974),
        (10, 0.292, 0.7993),
        (11, 0.2334, 0.7998),
        (12, 0.1867, 0.7999),
        (13, 0.1493, 0.7882),
        (14, 0.1177, None),
    ],
    11: [
        (5, 0.9379, 0.7832),
        (6, 0.7346, 0.7896),
        (7, 0.58, 0.7935),
        (8, 0.4602, 0.7959),
        (9, 0.3663, 0.7974),
        (10, 0.292, 0.7983),
        (11, 0.2331, 0.7989),
        (12, 0.1863, 0.7997),
        (13, 0.149, 0.7634),
        (14, 0.1137, None),
    ],
}
