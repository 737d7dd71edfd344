# isinstance-based dispatch over the shared model.
import domain_model
from domain_model import AuditTicket, HarborQueue, MediaBundle


def describe(item):
    if isinstance(item, AuditTicket):
        return "ticket"
    if isinstance(item, HarborQueue):
        return "queue"
    return "other"


def bundle_level(bundle):
    if isinstance(bundle, MediaBundle):
        if bundle.media_bundle_level > 3:
            return "rich"
        return "plain"
    return None


def ticket_code(item):
    if not isinstance(item, AuditTicket):
        return None
    if item.code == "urgent":
        return 1
    return 0
