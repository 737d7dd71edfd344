# Path handling with a branch that depends on the platform only.
import os
import domain_model


def normalize(path):
    if os.sep == "\\":
        return path.replace("\\", "/")
    if path.startswith("/"):
        return path
    return "/" + path


def depth(path):
    parts = path.split("/")
    if len(parts) > 3:
        return "deep"
    return "shallow"
