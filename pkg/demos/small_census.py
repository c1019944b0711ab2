"""Count small structures, labeled and up to relabeling."""

from dynbraid.search import KINDS, SearchSpec, canonical_count, count

print(f"{'kind':<16} {'N':>2} {'L':>2} {'labeled':>8} {'canonical':>10}")
for kind in KINDS:
    for n, l in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 3), (4, 1)]:
        spec = SearchSpec(kind, n, l)
        print(f"{kind:<16} {n:>2} {l:>2} {count(spec):>8} {canonical_count(spec):>10}")
