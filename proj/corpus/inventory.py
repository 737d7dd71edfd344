# Warehouse storing crates, checked through their weight.
import domain_model


class Crate:
    def __init__(self, label, weight):
        self.label = label
        self.weight = weight


class Warehouse:
    def __init__(self, capacity):
        self.capacity = capacity
        self.items = []

    def store(self, crate):
        if crate.weight > self.capacity:
            return False
        self.items.append(crate)
        return True

    def heaviest(self):
        if len(self.items) == 0:
            return None
        best = self.items[0]
        for c in self.items:
            if c.weight > best.weight:
                best = c
        return best.label
