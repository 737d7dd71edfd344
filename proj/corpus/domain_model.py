# Shared business model imported by the guard modules.

class Tagged:
    def __init__(self, tag):
        self.tag = tag

    def tag_length(self):
        return len(str(self.tag))


class SalesRecord(Tagged):
    def __init__(self, code, sales_record_level):
        Tagged.__init__(self, code)
        self.code = code
        self.sales_record_level = sales_record_level

    def sales_record_summary(self):
        return "SalesRecord"


class SalesProfile:
    def __init__(self, code, sales_profile_level):
        self.code = code
        self.sales_profile_level = sales_profile_level

    def sales_profile_summary(self):
        return "SalesProfile"


class SalesTicket:
    def __init__(self, code, sales_ticket_level):
        self.code = code
        self.sales_ticket_level = sales_ticket_level

    def sales_ticket_summary(self):
        return "SalesTicket"


class SalesBatch:
    def __init__(self, code, sales_batch_level):
        self.code = code
        self.sales_batch_level = sales_batch_level

    def sales_batch_summary(self):
        return "SalesBatch"


class SalesSchedule:
    def __init__(self, code, sales_schedule_level):
        self.code = code
        self.sales_schedule_level = sales_schedule_level

    def sales_schedule_summary(self):
        return "SalesSchedule"


class SalesReport:
    def __init__(self, code, sales_report_level):
        self.code = code
        self.sales_report_level = sales_report_level

    def sales_report_summary(self):
        return "SalesReport"


class SalesBundle:
    def __init__(self, code, sales_bundle_level):
        self.code = code
        self.sales_bundle_level = sales_bundle_level

    def sales_bundle_summary(self):
        return "SalesBundle"


class SalesPolicy(Tagged):
    def __init__(self, code, sales_policy_level):
        Tagged.__init__(self, code)
        self.code = code
        self.sales_policy_level = sales_policy_level

    def sales_policy_summary(self):
        return "SalesPolicy"


class SalesEntry:
    def __init__(self, code, sales_entry_level):
        self.code = code
        self.sales_entry_level = sales_entry_level

    def sales_entry_summary(self):
        return "SalesEntry"


class SalesQueue:
    def __init__(self, code, sales_queue_level):
        self.code = code
        self.sales_queue_level = sales_queue_level

    def sales_queue_summary(self):
        return "SalesQueue"


class StockRecord:
    def __init__(self, code, stock_record_level):
        self.code = code
        self.stock_record_level = stock_record_level

    def stock_record_summary(self):
        return "StockRecord"


class StockProfile:
    def __init__(self, code, stock_profile_level):
        self.code = code
        self.stock_profile_level = stock_profile_level

    def stock_profile_summary(self):
        return "StockProfile"


class StockTicket:
    def __init__(self, code, stock_ticket_level):
        self.code = code
        self.stock_ticket_level = stock_ticket_level

    def stock_ticket_summary(self):
        return "StockTicket"


class StockBatch:
    def __init__(self, code, stock_batch_level):
        self.code = code
        self.stock_batch_level = stock_batch_level

    def stock_batch_summary(self):
        return "StockBatch"


class StockSchedule(Tagged):
    def __init__(self, code, stock_schedule_level):
        Tagged.__init__(self, code)
        self.code = code
        self.stock_schedule_level = stock_schedule_level

    def stock_schedule_summary(self):
        return "StockSchedule"


class StockReport:
    def __init__(self, code, stock_report_level):
        self.code = code
        self.stock_report_level = stock_report_level

    def stock_report_summary(self):
        return "StockReport"


class StockBundle:
    def __init__(self, code, stock_bundle_level):
        self.code = code
        self.stock_bundle_level = stock_bundle_level

    def stock_bundle_summary(self):
        return "StockBundle"


class StockPolicy:
    def __init__(self, code, stock_policy_level):
        self.code = code
        self.stock_policy_level = stock_policy_level

    def stock_policy_summary(self):
        return "StockPolicy"


class StockEntry:
    def __init__(self, code, stock_entry_level):
        self.code = code
        self.stock_entry_level = stock_entry_level

    def stock_entry_summary(self):
        return "StockEntry"


class StockQueue:
    def __init__(self, code, stock_queue_level):
        self.code = code
        self.stock_queue_level = stock_queue_level

    def stock_queue_summary(self):
        return "StockQueue"


class AuditRecord:
    def __init__(self, code, audit_record_level):
        self.code = code
        self.audit_record_level = audit_record_level

    def audit_record_summary(self):
        return "AuditRecord"


class AuditProfile(Tagged):
    def __init__(self, code, audit_profile_level):
        Tagged.__init__(self, code)
        self.code = code
        self.audit_profile_level = audit_profile_level

    def audit_profile_summary(self):
        return "AuditProfile"


class AuditTicket:
    def __init__(self, code, audit_ticket_level):
        self.code = code
        self.audit_ticket_level = audit_ticket_level

    def audit_ticket_summary(self):
        return "AuditTicket"


class AuditBatch:
    def __init__(self, code, audit_batch_level):
        self.code = code
        self.audit_batch_level = audit_batch_level

    def audit_batch_summary(self):
        return "AuditBatch"


class AuditSchedule:
    def __init__(self, code, audit_schedule_level):
        self.code = code
        self.audit_schedule_level = audit_schedule_level

    def audit_schedule_summary(self):
        return "AuditSchedule"


class AuditReport:
    def __init__(self, code, audit_report_level):
        self.code = code
        self.audit_report_level = audit_report_level

    def audit_report_summary(self):
        return "AuditReport"


class AuditBundle:
    def __init__(self, code, audit_bundle_level):
        self.code = code
        self.audit_bundle_level = audit_bundle_level

    def audit_bundle_summary(self):
        return "AuditBundle"


class AuditPolicy:
    def __init__(self, code, audit_policy_level):
        self.code = code
        self.audit_policy_level = audit_policy_level

    def audit_policy_summary(self):
        return "AuditPolicy"


class AuditEntry(Tagged):
    def __init__(self, code, audit_entry_level):
        Tagged.__init__(self, code)
        self.code = code
        self.audit_entry_level = audit_entry_level

    def audit_entry_summary(self):
        return "AuditEntry"


class AuditQueue:
    def __init__(self, code, audit_queue_level):
        self.code = code
        self.audit_queue_level = audit_queue_level

    def audit_queue_summary(self):
        return "AuditQueue"


class TravelRecord:
    def __init__(self, code, travel_record_level):
        self.code = code
        self.travel_record_level = travel_record_level

    def travel_record_summary(self):
        return "TravelRecord"


class TravelProfile:
    def __init__(self, code, travel_profile_level):
        self.code = code
        self.travel_profile_level = travel_profile_level

    def travel_profile_summary(self):
        return "TravelProfile"


class TravelTicket:
    def __init__(self, code, travel_ticket_level):
        self.code = code
        self.travel_ticket_level = travel_ticket_level

    def travel_ticket_summary(self):
        return "TravelTicket"


class TravelBatch:
    def __init__(self, code, travel_batch_level):
        self.code = code
        self.travel_batch_level = travel_batch_level

    def travel_batch_summary(self):
        return "TravelBatch"


class TravelSchedule:
    def __init__(self, code, travel_schedule_level):
        self.code = code
        self.travel_schedule_level = travel_schedule_level

    def travel_schedule_summary(self):
        return "TravelSchedule"


class TravelReport(Tagged):
    def __init__(self, code, travel_report_level):
        Tagged.__init__(self, code)
        self.code = code
        self.travel_report_level = travel_report_level

    def travel_report_summary(self):
        return "TravelReport"


class TravelBundle:
    def __init__(self, code, travel_bundle_level):
        self.code = code
        self.travel_bundle_level = travel_bundle_level

    def travel_bundle_summary(self):
        return "TravelBundle"


class TravelPolicy:
    def __init__(self, code, travel_policy_level):
        self.code = code
        self.travel_policy_level = travel_policy_level

    def travel_policy_summary(self):
        return "TravelPolicy"


class TravelEntry:
    def __init__(self, code, travel_entry_level):
        self.code = code
        self.travel_entry_level = travel_entry_level

    def travel_entry_summary(self):
        return "TravelEntry"


class TravelQueue:
    def __init__(self, code, travel_queue_level):
        self.code = code
        self.travel_queue_level = travel_queue_level

    def travel_queue_summary(self):
        return "TravelQueue"


class MediaRecord:
    def __init__(self, code, media_record_level):
        self.code = code
        self.media_record_level = media_record_level

    def media_record_summary(self):
        return "MediaRecord"


class MediaProfile:
    def __init__(self, code, media_profile_level):
        self.code = code
        self.media_profile_level = media_profile_level

    def media_profile_summary(self):
        return "MediaProfile"


class MediaTicket(Tagged):
    def __init__(self, code, media_ticket_level):
        Tagged.__init__(self, code)
        self.code = code
        self.media_ticket_level = media_ticket_level

    def media_ticket_summary(self):
        return "MediaTicket"


class MediaBatch:
    def __init__(self, code, media_batch_level):
        self.code = code
        self.media_batch_level = media_batch_level

    def media_batch_summary(self):
        return "MediaBatch"


class MediaSchedule:
    def __init__(self, code, media_schedule_level):
        self.code = code
        self.media_schedule_level = media_schedule_level

    def media_schedule_summary(self):
        return "MediaSchedule"


class MediaReport:
    def __init__(self, code, media_report_level):
        self.code = code
        self.media_report_level = media_report_level

    def media_report_summary(self):
        return "MediaReport"


class MediaBundle:
    def __init__(self, code, media_bundle_level):
        self.code = code
        self.media_bundle_level = media_bundle_level

    def media_bundle_summary(self):
        return "MediaBundle"


class MediaPolicy:
    def __init__(self, code, media_policy_level):
        self.code = code
        self.media_policy_level = media_policy_level

    def media_policy_summary(self):
        return "MediaPolicy"


class MediaEntry:
    def __init__(self, code, media_entry_level):
        self.code = code
        self.media_entry_level = media_entry_level

    def media_entry_summary(self):
        return "MediaEntry"


class MediaQueue(Tagged):
    def __init__(self, code, media_queue_level):
        Tagged.__init__(self, code)
        self.code = code
        self.media_queue_level = media_queue_level

    def media_queue_summary(self):
        return "MediaQueue"


class HealthRecord:
    def __init__(self, code, health_record_level):
        self.code = code
        self.health_record_level = health_record_level

    def health_record_summary(self):
        return "HealthRecord"


class HealthProfile:
    def __init__(self, code, health_profile_level):
        self.code = code
        self.health_profile_level = health_profile_level

    def health_profile_summary(self):
        return "HealthProfile"


class HealthTicket:
    def __init__(self, code, health_ticket_level):
        self.code = code
        self.health_ticket_level = health_ticket_level

    def health_ticket_summary(self):
        return "HealthTicket"


class HealthBatch:
    def __init__(self, code, health_batch_level):
        self.code = code
        self.health_batch_level = health_batch_level

    def health_batch_summary(self):
        return "HealthBatch"


class HealthSchedule:
    def __init__(self, code, health_schedule_level):
        self.code = code
        self.health_schedule_level = health_schedule_level

    def health_schedule_summary(self):
        return "HealthSchedule"


class HealthReport:
    def __init__(self, code, health_report_level):
        self.code = code
        self.health_report_level = health_report_level

    def health_report_summary(self):
        return "HealthReport"


class HealthBundle(Tagged):
    def __init__(self, code, health_bundle_level):
        Tagged.__init__(self, code)
        self.code = code
        self.health_bundle_level = health_bundle_level

    def health_bundle_summary(self):
        return "HealthBundle"


class HealthPolicy:
    def __init__(self, code, health_policy_level):
        self.code = code
        self.health_policy_level = health_policy_level

    def health_policy_summary(self):
        return "HealthPolicy"


class HealthEntry:
    def __init__(self, code, health_entry_level):
        self.code = code
        self.health_entry_level = health_entry_level

    def health_entry_summary(self):
        return "HealthEntry"


class HealthQueue:
    def __init__(self, code, health_queue_level):
        self.code = code
        self.health_queue_level = health_queue_level

    def health_queue_summary(self):
        return "HealthQueue"


class SchoolRecord:
    def __init__(self, code, school_record_level):
        self.code = code
        self.school_record_level = school_record_level

    def school_record_summary(self):
        return "SchoolRecord"


class SchoolProfile:
    def __init__(self, code, school_profile_level):
        self.code = code
        self.school_profile_level = school_profile_level

    def school_profile_summary(self):
        return "SchoolProfile"


class SchoolTicket:
    def __init__(self, code, school_ticket_level):
        self.code = code
        self.school_ticket_level = school_ticket_level

    def school_ticket_summary(self):
        return "SchoolTicket"


class SchoolBatch(Tagged):
    def __init__(self, code, school_batch_level):
        Tagged.__init__(self, code)
        self.code = code
        self.school_batch_level = school_batch_level

    def school_batch_summary(self):
        return "SchoolBatch"


class SchoolSchedule:
    def __init__(self, code, school_schedule_level):
        self.code = code
        self.school_schedule_level = school_schedule_level

    def school_schedule_summary(self):
        return "SchoolSchedule"


class SchoolReport:
    def __init__(self, code, school_report_level):
        self.code = code
        self.school_report_level = school_report_level

    def school_report_summary(self):
        return "SchoolReport"


class SchoolBundle:
    def __init__(self, code, school_bundle_level):
        self.code = code
        self.school_bundle_level = school_bundle_level

    def school_bundle_summary(self):
        return "SchoolBundle"


class SchoolPolicy:
    def __init__(self, code, school_policy_level):
        self.code = code
        self.school_policy_level = school_policy_level

    def school_policy_summary(self):
        return "SchoolPolicy"


class SchoolEntry:
    def __init__(self, code, school_entry_level):
        self.code = code
        self.school_entry_level = school_entry_level

    def school_entry_summary(self):
        return "SchoolEntry"


class SchoolQueue:
    def __init__(self, code, school_queue_level):
        self.code = code
        self.school_queue_level = school_queue_level

    def school_queue_summary(self):
        return "SchoolQueue"


class GardenRecord(Tagged):
    def __init__(self, code, garden_record_level):
        Tagged.__init__(self, code)
        self.code = code
        self.garden_record_level = garden_record_level

    def garden_record_summary(self):
        return "GardenRecord"


class GardenProfile:
    def __init__(self, code, garden_profile_level):
        self.code = code
        self.garden_profile_level = garden_profile_level

    def garden_profile_summary(self):
        return "GardenProfile"


class GardenTicket:
    def __init__(self, code, garden_ticket_level):
        self.code = code
        self.garden_ticket_level = garden_ticket_level

    def garden_ticket_summary(self):
        return "GardenTicket"


class GardenBatch:
    def __init__(self, code, garden_batch_level):
        self.code = code
        self.garden_batch_level = garden_batch_level

    def garden_batch_summary(self):
        return "GardenBatch"


class GardenSchedule:
    def __init__(self, code, garden_schedule_level):
        self.code = code
        self.garden_schedule_level = garden_schedule_level

    def garden_schedule_summary(self):
        return "GardenSchedule"


class GardenReport:
    def __init__(self, code, garden_report_level):
        self.code = code
        self.garden_report_level = garden_report_level

    def garden_report_summary(self):
        return "GardenReport"


class GardenBundle:
    def __init__(self, code, garden_bundle_level):
        self.code = code
        self.garden_bundle_level = garden_bundle_level

    def garden_bundle_summary(self):
        return "GardenBundle"


class GardenPolicy(Tagged):
    def __init__(self, code, garden_policy_level):
        Tagged.__init__(self, code)
        self.code = code
        self.garden_policy_level = garden_policy_level

    def garden_policy_summary(self):
        return "GardenPolicy"


class GardenEntry:
    def __init__(self, code, garden_entry_level):
        self.code = code
        self.garden_entry_level = garden_entry_level

    def garden_entry_summary(self):
        return "GardenEntry"


class GardenQueue:
    def __init__(self, code, garden_queue_level):
        self.code = code
        self.garden_queue_level = garden_queue_level

    def garden_queue_summary(self):
        return "GardenQueue"


class HarborRecord:
    def __init__(self, code, harbor_record_level):
        self.code = code
        self.harbor_record_level = harbor_record_level

    def harbor_record_summary(self):
        return "HarborRecord"


class HarborProfile:
    def __init__(self, code, harbor_profile_level):
        self.code = code
        self.harbor_profile_level = harbor_profile_level

    def harbor_profile_summary(self):
        return "HarborProfile"


class HarborTicket:
    def __init__(self, code, harbor_ticket_level):
        self.code = code
        self.harbor_ticket_level = harbor_ticket_level

    def harbor_ticket_summary(self):
        return "HarborTicket"


class HarborBatch:
    def __init__(self, code, harbor_batch_level):
        self.code = code
        self.harbor_batch_level = harbor_batch_level

    def harbor_batch_summary(self):
        return "HarborBatch"


class HarborSchedule(Tagged):
    def __init__(self, code, harbor_schedule_level):
        Tagged.__init__(self, code)
        self.code = code
        self.harbor_schedule_level = harbor_schedule_level

    def harbor_schedule_summary(self):
        return "HarborSchedule"


class HarborReport:
    def __init__(self, code, harbor_report_level):
        self.code = code
        self.harbor_report_level = harbor_report_level

    def harbor_report_summary(self):
        return "HarborReport"


class HarborBundle:
    def __init__(self, code, harbor_bundle_level):
        self.code = code
        self.harbor_bundle_level = harbor_bundle_level

    def harbor_bundle_summary(self):
        return "HarborBundle"


class HarborPolicy:
    def __init__(self, code, harbor_policy_level):
        self.code = code
        self.harbor_policy_level = harbor_policy_level

    def harbor_policy_summary(self):
        return "HarborPolicy"


class HarborEntry:
    def __init__(self, code, harbor_entry_level):
        self.code = code
        self.harbor_entry_level = harbor_entry_level

    def harbor_entry_summary(self):
        return "HarborEntry"


class HarborQueue:
    def __init__(self, code, harbor_queue_level):
        self.code = code
        self.harbor_queue_level = harbor_queue_level

    def harbor_queue_summary(self):
        return "HarborQueue"


class StudioRecord:
    def __init__(self, code, studio_record_level):
        self.code = code
        self.studio_record_level = studio_record_level

    def studio_record_summary(self):
        return "StudioRecord"


class StudioProfile(Tagged):
    def __init__(self, code, studio_profile_level):
        Tagged.__init__(self, code)
        self.code = code
        self.studio_profile_level = studio_profile_level

    def studio_profile_summary(self):
        return "StudioProfile"


class StudioTicket:
    def __init__(self, code, studio_ticket_level):
        self.code = code
        self.studio_ticket_level = studio_ticket_level

    def studio_ticket_summary(self):
        return "StudioTicket"


class StudioBatch:
    def __init__(self, code, studio_batch_level):
        self.code = code
        self.studio_batch_level = studio_batch_level

    def studio_batch_summary(self):
        return "StudioBatch"


class StudioSchedule:
    def __init__(self, code, studio_schedule_level):
        self.code = code
        self.studio_schedule_level = studio_schedule_level

    def studio_schedule_summary(self):
        return "StudioSchedule"


class StudioReport:
    def __init__(self, code, studio_report_level):
        self.code = code
        self.studio_report_level = studio_report_level

    def studio_report_summary(self):
        return "StudioReport"


class StudioBundle:
    def __init__(self, code, studio_bundle_level):
        self.code = code
        self.studio_bundle_level = studio_bundle_level

    def studio_bundle_summary(self):
        return "StudioBundle"


class StudioPolicy:
    def __init__(self, code, studio_policy_level):
        self.code = code
        self.studio_policy_level = studio_policy_level

    def studio_policy_summary(self):
        return "StudioPolicy"


class StudioEntry(Tagged):
    def __init__(self, code, studio_entry_level):
        Tagged.__init__(self, code)
        self.code = code
        self.studio_entry_level = studio_entry_level

    def studio_entry_summary(self):
        return "StudioEntry"


class StudioQueue:
    def __init__(self, code, studio_queue_level):
        self.code = code
        self.studio_queue_level = studio_queue_level

    def studio_queue_summary(self):
        return "StudioQueue"


class ForumRecord:
    def __init__(self, code, forum_record_level):
        self.code = code
        self.forum_record_level = forum_record_level

    def forum_record_summary(self):
        return "ForumRecord"


class ForumProfile:
    def __init__(self, code, forum_profile_level):
        self.code = code
        self.forum_profile_level = forum_profile_level

    def forum_profile_summary(self):
        return "ForumProfile"


class ForumTicket:
    def __init__(self, code, forum_ticket_level):
        self.code = code
        self.forum_ticket_level = forum_ticket_level

    def forum_ticket_summary(self):
        return "ForumTicket"


class ForumBatch:
    def __init__(self, code, forum_batch_level):
        self.code = code
        self.forum_batch_level = forum_batch_level

    def forum_batch_summary(self):
        return "ForumBatch"


class ForumSchedule:
    def __init__(self, code, forum_schedule_level):
        self.code = code
        self.forum_schedule_level = forum_schedule_level

    def forum_schedule_summary(self):
        return "ForumSchedule"


class ForumReport(Tagged):
    def __init__(self, code, forum_report_level):
        Tagged.__init__(self, code)
        self.code = code
        self.forum_report_level = forum_report_level

    def forum_report_summary(self):
        return "ForumReport"


class ForumBundle:
    def __init__(self, code, forum_bundle_level):
        self.code = code
        self.forum_bundle_level = forum_bundle_level

    def forum_bundle_summary(self):
        return "ForumBundle"


class ForumPolicy:
    def __init__(self, code, forum_policy_level):
        self.code = code
        self.forum_policy_level = forum_policy_level

    def forum_policy_summary(self):
        return "ForumPolicy"


class ForumEntry:
    def __init__(self, code, forum_entry_level):
        self.code = code
        self.forum_entry_level = forum_entry_level

    def forum_entry_summary(self):
        return "ForumEntry"


class ForumQueue:
    def __init__(self, code, forum_queue_level):
        self.code = code
        self.forum_queue_level = forum_queue_level

    def forum_queue_summary(self):
        return "ForumQueue"
