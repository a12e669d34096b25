"""Shared base for immutable formula trees with cached structural hashes."""
from dataclasses import fields


class Node:
    __slots__ = ("_hash",)

    def _key(self):
        cls = type(self)
        names = cls.__dict__.get("_names")
        if names is None:
            names = tuple(f.name for f in fields(cls))
            cls._names = names
        return tuple(getattr(self, n) for n in names)

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def children(self):
        return tuple(v for v in self._key() if isinstance(v, Node))

    def subformulas(self):
        """Closure in post-order, deduplicated by structural equality."""
        seen = {}
        stack = [(self, False)]
        while stack:
            f, done = stack.pop()
            if f in seen:
                continue
            if done:
                seen[f] = None
                continue
            stack.append((f, True))
            for c in reversed(f.children()):
                if c not in seen:
                    stack.append((c, False))
        return list(seen)

    def size(self):
        return 1 + sum(c.size() for c in self.children())

    def depth(self):
        kids = self.children()
        return 1 + max(c.depth() for c in kids) if kids else 0
