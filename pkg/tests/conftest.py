from hypothesis import settings

# Exact big-integer comparisons and word enumeration make individual
# examples slow enough to trip the default 200ms deadline on loaded CI
# machines; correctness here never depends on wall-clock time.
settings.register_profile("suite", deadline=None)
settings.load_profile("suite")
