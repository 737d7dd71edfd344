# Reading settings from plain dictionaries.
import domain_model


def read_mode(config):
    if isinstance(config, dict):
        if "mode" in config:
            if config["mode"] == "fast":
                return 1
            return 2
        return 3
    return 0


def enabled_count(flags):
    count = 0
    for flag in flags:
        if flag:
            count = count + 1
    return count
