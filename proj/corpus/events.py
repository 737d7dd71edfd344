# Duck-typed event routing.
import domain_model


class ClickEvent:
    kind = "click"

    def __init__(self, x, y):
        self.x = x
        self.y = y


class KeyEvent:
    kind = "key"

    def __init__(self, key):
        self.key = key


class ScrollEvent:
    kind = "scroll"

    def __init__(self, delta):
        self.delta = delta


class Logger:
    def __init__(self):
        self.seen = 0

    def handle_event(self, event):
        self.seen = self.seen + 1
        return event.kind


def dispatch(event, handler):
    if event.kind == "click":
        if event.x > 0:
            return handler.handle_event(event)
        return "outside"
    if event.kind == "key":
        return "key"
    return "ignored"
