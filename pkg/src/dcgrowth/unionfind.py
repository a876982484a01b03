class UnionFind:
    """Disjoint sets over hashable items, union by size with path halving.

    Items are added lazily.  ``union`` keeps the root of the larger set, or the
    first argument's root on ties.
    """

    def __init__(self, items=()):
        self.parent = {}
        self.size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return x
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size.pop(y)
        return x

    def roots(self):
        return set(self.size)

    def __len__(self):
        return len(self.size)
