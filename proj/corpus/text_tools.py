# String helpers; some hand their argument to native str methods.
import domain_model


def get_domain(email):
    if "@" in email:
        return email.split("@")[1]
    return None


def has_prefix(text, prefix):
    if text.startswith(prefix):
        return True
    return False


def shout(word):
    if word.isupper():
        return word
    return word.upper()
