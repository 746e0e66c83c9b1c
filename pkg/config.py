# === Size Guard ===
SIZE_GUARD = 64                # max morphisms a construction accepts
SIZE_GUARD_ENV = 'CATEXT_SIZE_GUARD'

# === Caches ===
CONSTRUCTION_CACHE_SIZE = 32    # derived categories kept per construction
NERVE_CACHE_SIZE = 256         # (category, degree) nerves kept

# === Degrees ===
DEFAULT_DEGREE = 3             # truncation degree N when none is given
MIN_DEGREE = 1

# === Coefficients ===
DEFAULT_PRIME = 2
DEFAULT_NILPOTENCY = 1         # m = 1 means R is the field F_p

# === Random Instances ===
RANDOM_MAX_OBJECTS = 3
RANDOM_MAX_ARROWS = 3          # poset relations drawn; 4+ lets face monoids take two generators
RANDOM_MAX_DIM = 2             # dimension of the ambient module behind random diagrams
RANDOM_EDGE_PROBABILITY = 0.5
RANDOM_GROUP_ORDERS = (2, 3)
RANDOM_PRIMES = (2, 3, 5)
RANDOM_NILPOTENCY = (1, 2)
RANDOM_FACE_RANK = 2           # length of the sign vectors generating a face monoid
RANDOM_SUITE_SIZE = 10
RANDOM_SUITE_SIZE_ENV = 'CATEXT_SUITE_SIZE'

# === Reports ===
REPORT_INDENT = 2
TABLE_CELL_WIDTH = 6

# === Exit Codes ===
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2
