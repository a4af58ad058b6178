"""Published bound-state energies for the reference parameter set.

Values are copied verbatim, including three entries whose digits disagree with
their interdimensional duplicates (see ``PRINT_ANOMALIES``).
"""

REFERENCE_PARAMS = {"m0": -5.0, "m1": -0.2, "V0": 2.0, "alpha": 0.01, "S1": 3.0, "V1": 0.5, "q": 1.0, "S0": 0.0}

# (n, l, D, E_plus, E_minus)
TABLE_ROWS = (
    (0, 0, 1, 2.569172676, -2.203041293),
    (0, 0, 2, 2.569156234, -2.203011271),
    (0, 0, 3, 2.569172676, -2.203041203),
    (0, 0, 4, 2.569221997, -2.203130998),
    (0, 1, 1, 2.569172676, -2.203041203),
    (0, 1, 2, 2.569221997, -2.203130998),
    (0, 1, 3, 2.569304187, -2.203280640),
    (0, 1, 4, 2.569419235, -2.203490115),
    (0, 2, 1, 2.569304187, -2.203280640),
    (0, 2, 2, 2.569419235, -2.203490115),
    (0, 2, 3, 2.569567123, -2.203759397),
    (0, 2, 4, 2.569747824, -2.204088452),
    (0, 3, 1, 2.569567123, -2.203759397),
    (0, 3, 2, 2.569747824, -2.204088452),
    (0, 3, 3, 2.569961309, -2.204477240),
    (0, 3, 4, 2.570207541, -2.204925711),
    (0, 4, 1, 2.569961309, -2.204477240),
    (0, 4, 2, 2.570207541, -2.204925711),
    (0, 4, 3, 2.570486483, -2.205433819),
    (0, 4, 4, 2.570798087, -2.206001495),
    (1, 0, 1, 2.5953363031, -2.251003944),
    (1, 0, 2, 2.595347227, -2.250974832),
    (1, 0, 3, 2.595363031, -2.251003944),
    (1, 0, 4, 2.595410441, -2.251091282),
    (1, 1, 1, 2.595363031, -2.251003944),
    (1, 1, 2, 2.595410441, -2.251091282),
    (1, 1, 3, 2.595489446, -2.251236828),
    (1, 1, 4, 2.595600036, -2.251440570),
    (1, 2, 1, 2.595489446, -2.251236828),
    (1, 2, 2, 2.595600036, -2.251440570),
    (1, 2, 3, 2.595742192, -2.251702481),
    (1, 2, 4, 2.595915893, -2.252022535),
    (1, 3, 1, 2.595742192, -2.251702481),
    (1, 3, 2, 2.595915893, -2.252022535),
    (1, 3, 3, 2.596121109, -2.252400688),
    (1, 3, 4, 2.596357804, -2.252836894),
    (1, 4, 1, 2.596121109, -2.252400688),
    (1, 4, 2, 2.596357804, -2.252836894),
    (1, 4, 3, 2.596625945, -2.253331107),
    (1, 4, 4, 2.596925485, -2.253883264),
    (2, 0, 1, 2.620547699, -2.297667736),
    (2, 0, 2, 2.620532497, -2.297639403),
    (2, 0, 3, 2.620547699, -2.297667736),
    (2, 0, 4, 2.620593305, -2.297752733),
    (2, 1, 1, 2.620547699, -2.297667736),
    (2, 1, 2, 2.620593305, -2.297752733),
    (2, 1, 3, 2.620669304, -2.297894378),
    (2, 1, 4, 2.620775688, -2.2980922663),
    (2, 2, 1, 2.620669304, -2.297894378),
    (2, 2, 2, 2.620775688, -2.298092663),
    (2, 2, 3, 2.620912436, -2.298347556),
    (2, 2, 4, 2.621079530, -2.298659035),
    (2, 3, 1, 2.620912436, -2.298347556),
    (2, 3, 2, 2.621079530, -2.298659035),
    (2, 3, 3, 2.621276940, -2.299027058),
    (2, 3, 4, 2.621504637, -2.299451584),
    (2, 4, 1, 2.621276940, -2.299027058),
    (2, 4, 2, 2.621504637, -2.299451584),
    (2, 4, 3, 2.621762582, -2.299932564),
    (2, 4, 4, 2.622050736, -2.300469940),
)

# (n, l, D, branch): value implied by the entries sharing its centrifugal constant
PRINT_ANOMALIES = {
    (0, 0, 1, "minus"): -2.203041203,
    (1, 0, 1, "plus"): 2.595363031,
    (2, 1, 4, "minus"): -2.298092663,
}
