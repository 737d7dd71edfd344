def answer():
    return 42


def greeting():
    return "hello"
