DEFAULT_BUDGET = 10**8
DEFAULT_Q_LIST = (3, 5, 7, 9, 11, 13)
GENSET_QMAX = 13
SEARCH_FACTOR = 4
PRIME_CEILING = 10**4
CHUNK_SIZE = 2**18
BUDGET_ENV_VAR = "LIEIMAGE_BUDGET"
# (t, part) pairs checked by the arithmetic progression suite
DIRICHLET_CASES = ((2, 2), (2, 3), (2, 4), (4, 2), (4, 3), (1, 4))
