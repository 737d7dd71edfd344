# Minimal syntax tree with a class-definition visitor.
import domain_model


class Node:
    def __init__(self, lineno):
        self.lineno = lineno


class Name(Node):
    def __init__(self, lineno, id):
        Node.__init__(self, lineno)
        self.id = id


class Attribute(Node):
    def __init__(self, lineno, value, attr):
        Node.__init__(self, lineno)
        self.value = value
        self.attr = attr


class ClassDef(Node):
    def __init__(self, lineno, name, bases, body):
        Node.__init__(self, lineno)
        self.name = name
        self.bases = bases
        self.body = body


class Import(Node):
    def __init__(self, lineno, names):
        Node.__init__(self, lineno)
        self.names = names


def visit_class_def(node):
    bases = []
    for base in node.bases:
        if isinstance(base, Name):
            bases.append(base.id)
        elif isinstance(base, Attribute):
            bases.append(base.attr)
        else:
            bases.append("?")
    if len(bases) == 0:
        return "class"
    return "class(" + str(len(bases)) + ")"


def count_imports(node):
    total = 0
    for alias in node.names:
        total = total + 1
    return total
