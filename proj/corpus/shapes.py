# Shapes distinguished only by their attributes.
import domain_model


class Circle:
    def __init__(self, radius):
        self.radius = radius


class Rectangle:
    def __init__(self, width, height):
        self.width = width
        self.height = height


class Triangle:
    def __init__(self, base_length, height):
        self.base_length = base_length
        self.height = height


def circle_size(shape):
    if shape.radius > 10:
        return "large"
    return "small"


def rectangle_kind(shape):
    if shape.width == shape.height:
        return "square"
    if shape.width > shape.height:
        return "wide"
    return "tall"


def triangle_flat(shape):
    if shape.base_length > 2 * shape.height:
        return True
    return False
