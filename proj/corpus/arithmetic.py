# Numeric helpers guarded by operator results.
import domain_model


def scale(value, factor):
    result = value * factor
    if result > 1000:
        return "huge"
    if result < 0:
        return "negative"
    return "normal"


def ratio(a, b):
    if b == 0:
        return None
    return a / b


def clamp(x, low, high):
    if x < low:
        return low
    if x > high:
        return high
    return x
