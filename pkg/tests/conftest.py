import random

import hypothesis

from hetcdc.model import FileAllocation, make_allocation, validate_config

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.load_profile("ci")


def sorted_grid_configs(n_max):
    """All valid sorted K=3 instances with M1 <= M2 <= M3 <= N <= n_max."""
    for N in range(1, n_max + 1):
        for M1 in range(1, N + 1):
            for M2 in range(M1, N + 1):
                for M3 in range(M2, N + 1):
                    if M1 + M2 + M3 >= N:
                        yield validate_config(3, [M1, M2, M3], N)


def random_allocation(rng: random.Random, n_max: int) -> FileAllocation:
    """A uniformly messy valid K=3 allocation with N <= n_max files."""
    N = rng.randint(1, n_max)
    sets = [set(), set(), set()]
    for n in range(1, N + 1):
        for k in rng.sample([1, 2, 3], rng.randint(1, 3)):
            sets[k - 1].add(n)
    for s in sets:
        if not s:
            s.add(rng.randint(1, N))
    M = [len(s) for s in sets]
    cfg = validate_config(3, M, N, sort_k3=False)
    return make_allocation(cfg, sets)
