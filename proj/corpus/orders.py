# Nested object graphs behind attribute chains.
import domain_model


class Address:
    def __init__(self, city, country):
        self.city = city
        self.country = country


class Customer:
    def __init__(self, name, address):
        self.name = name
        self.address = address


class OrderLine:
    def __init__(self, quantity, unit_price):
        self.quantity = quantity
        self.unit_price = unit_price


class Order:
    def __init__(self, customer, lines):
        self.customer = customer
        self.lines = lines


def shipping_zone(order):
    country = order.customer.address.country
    if country == "DE":
        return "domestic"
    if country == "FR":
        return "eu"
    return "world"


def order_total(order):
    total = 0
    for line in order.lines:
        total = total + line.quantity * line.unit_price
    if total > 500:
        return "bulk"
    return "normal"
