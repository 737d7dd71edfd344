# Guards on the elements of collections.
import domain_model


class Product:
    def __init__(self, sku, price):
        self.sku = sku
        self.price = price


class Category:
    def __init__(self, title, products):
        self.title = title
        self.products = products


def expensive_count(products):
    count = 0
    for p in products:
        if p.price > 50:
            count = count + 1
    if count > 1:
        return "many"
    return "few"


def category_value(category):
    total = 0
    for p in category.products:
        total = total + p.price
    if total > 100:
        return "valuable"
    return "cheap"
