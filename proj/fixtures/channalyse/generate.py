#!/usr/bin/env python3
# Copyright 2026 The Constellation OLAP Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the channalyse fixture (schema + CSV files).

Sale rows restricted to position=manager, categ=C1, year=2000 aggregate per
(branch_desc, pay_class) to the reference grid below; every other sale row
fails at least one of those three restrictions.
"""

import csv
import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")

# (pay_class, branch_desc) -> (total_sales, tax_amount, quantity)
GRID = {
    ("PC1", "BR1"): (58, 6, 2), ("PC1", "BR2"): (67, 7, 3),
    ("PC1", "BR3"): (58, 6, 1), ("PC1", "BR4"): (68, 7, 2),
    ("PC2", "BR1"): (60, 6, 3), ("PC2", "BR2"): (55, 6, 3),
    ("PC2", "BR3"): (50, 5, 1), ("PC2", "BR4"): (65, 7, 3),
    ("PC3", "BR1"): (45, 5, 1), ("PC3", "BR2"): (50, 5, 1),
    ("PC3", "BR3"): (52, 5, 1), ("PC3", "BR4"): (64, 6, 2),
}

SCHEMA = {
    "name": "channalyse",
    "facts": [
        {
            "name": "sale",
            "measures": [
                {"name": "total_sales", "kind": "numeric", "agg": "sum"},
                {"name": "tax_amount", "kind": "numeric", "agg": "sum"},
                {"name": "quantity", "kind": "numeric", "agg": "sum"},
            ],
            "dimensions": ["shop", "payment", "person", "product", "date"],
        },
        {
            "name": "purchase",
            "measures": [
                {"name": "qty_purchased", "kind": "numeric", "agg": "sum"},
                {"name": "cost", "kind": "numeric", "agg": "sum"},
            ],
            "dimensions": ["stock", "product", "date"],
        },
    ],
    "dimensions": [
        {
            "name": "shop",
            "key": "shopID",
            "attributes": ["shopID", "channel_class", "branch_desc", "city",
                           "county", "state", "zone"],
            "hierarchies": [
                {"name": "h_shop_channel",
                 "params": ["shopID", "channel_class", "branch_desc"]},
                {"name": "h_shop_administrative",
                 "params": ["shopID", "city", "county", "state"]},
                {"name": "h_shop_zone", "params": ["shopID", "city", "zone"]},
            ],
        },
        {
            "name": "payment",
            "key": "paymentID",
            "attributes": ["paymentID", "pay_class"],
            "hierarchies": [
                {"name": "h_payment", "params": ["paymentID", "pay_class"]},
            ],
        },
        {
            "name": "person",
            "key": "personID",
            "attributes": ["personID", "position"],
            "hierarchies": [
                {"name": "h_person_position",
                 "params": ["personID", "position"]},
            ],
        },
        {
            "name": "product",
            "key": "prodID",
            "attributes": ["prodID", "type", "categ"],
            "hierarchies": [
                {"name": "h_product_category",
                 "params": ["prodID", "type", "categ"]},
            ],
        },
        {
            "name": "date",
            "key": "dateID",
            "attributes": ["dateID", "day", "month", "quarter", "year"],
            "hierarchies": [
                {"name": "h_date_gregorian",
                 "params": ["dateID", "day", "month", "quarter", "year"]},
            ],
        },
        {
            "name": "stock",
            "key": "warehouseID",
            "attributes": ["warehouseID", "city", "county", "state", "zone"],
            "hierarchies": [
                {"name": "h_stock_administrative",
                 "params": ["warehouseID", "city", "county", "state"]},
                {"name": "h_stock_zone",
                 "params": ["warehouseID", "city", "zone"]},
            ],
        },
    ],
}

SHOPS = [
    ("s1", "CC1", "BR1", "Toulouse", "Haute-Garonne", "Occitanie", "Z1"),
    ("s2", "CC2", "BR2", "Paris", "Paris", "Ile-de-France", "Z2"),
    ("s3", "CC3", "BR3", "Lyon", "Rhone", "Auvergne-Rhone-Alpes", "Z2"),
    ("s4", "CC4", "BR4", "Toulouse", "Haute-Garonne", "Occitanie", "Z1"),
]
PAYMENTS = [("pay1", "PC1"), ("pay2", "PC2"), ("pay3", "PC3")]
PERSONS = [("e1", "manager"), ("e2", "seller"), ("e3", "manager"),
           ("e4", "cashier")]
PRODUCTS = [("p1", "T1", "C1"), ("p2", "T2", "C2"), ("p3", "T3", "C3"),
            ("p4", "T1", "C1"), ("p5", "T4", "C1"), ("p6", "T2", "C2")]
STOCKS = [
    ("w1", "Toulouse", "Haute-Garonne", "Occitanie", "Z1"),
    ("w2", "Lyon", "Rhone", "Auvergne-Rhone-Alpes", "Z2"),
    ("w3", "Bordeaux", "Gironde", "Nouvelle-Aquitaine", "Z1"),
]


def dates():
    rows = []
    for year in (1998, 1999, 2000):
        for month, day in ((1, 15), (4, 10), (7, 20), (11, 5)):
            quarter = (month - 1) // 3 + 1
            rows.append((f"d{year}{month:02d}{day:02d}",
                         f"{year}-{month:02d}-{day:02d}",
                         f"{year}-{month:02d}", f"{year}-Q{quarter}", year))
    return rows


def split(total, parts, rng):
    """Splits a non-negative integer into `parts` non-negative integers."""
    if parts == 1:
        return [total]
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def write_csv(name, header, rows):
    with open(os.path.join(DATA, name + ".csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    rng = random.Random(20011)
    os.makedirs(DATA, exist_ok=True)
    with open(os.path.join(HERE, "channalyse.json"), "w") as f:
        json.dump(SCHEMA, f, indent=2)
        f.write("\n")

    date_rows = dates()
    write_csv("shop", ["shopID", "channel_class", "branch_desc", "city",
                       "county", "state", "zone"], SHOPS)
    write_csv("payment", ["paymentID", "pay_class"], PAYMENTS)
    write_csv("person", ["personID", "position"], PERSONS)
    write_csv("product", ["prodID", "type", "categ"], PRODUCTS)
    write_csv("date", ["dateID", "day", "month", "quarter", "year"], date_rows)
    write_csv("stock", ["warehouseID", "city", "county", "state", "zone"],
              STOCKS)

    shop_of_branch = {s[2]: s[0] for s in SHOPS}
    pay_of_class = {p[1]: p[0] for p in PAYMENTS}
    managers = [p[0] for p in PERSONS if p[1] == "manager"]
    others = [p[0] for p in PERSONS if p[1] != "manager"]
    c1 = [p[0] for p in PRODUCTS if p[2] == "C1"]
    not_c1 = [p[0] for p in PRODUCTS if p[2] != "C1"]
    y2000 = [d[0] for d in date_rows if d[4] == 2000]
    not_2000 = [d[0] for d in date_rows if d[4] != 2000]

    sales = []
    for (pay_class, branch), (total, tax, qty) in GRID.items():
        totals = split(total, qty, rng)
        taxes = split(tax, qty, rng)
        for i in range(qty):
            sales.append([shop_of_branch[branch], pay_of_class[pay_class],
                          rng.choice(managers), rng.choice(c1),
                          rng.choice(y2000), totals[i], taxes[i], 1])

    for _ in range(90):
        person = rng.choice(managers + others)
        product = rng.choice(c1 + not_c1)
        date = rng.choice(y2000 + not_2000)
        if person in managers and product in c1 and date in y2000:
            date = rng.choice(not_2000)
        total = rng.randint(10, 90)
        sales.append([rng.choice(SHOPS)[0], rng.choice(PAYMENTS)[0], person,
                      product, date, total, total // 10, rng.randint(1, 4)])
    rng.shuffle(sales)
    write_csv("sale", ["shop_id", "payment_id", "person_id", "product_id",
                       "date_id", "total_sales", "tax_amount", "quantity"],
              sales)

    purchases = []
    for _ in range(36):
        qty = rng.randint(5, 40)
        purchases.append([rng.choice(STOCKS)[0], rng.choice(PRODUCTS)[0],
                          rng.choice(date_rows)[0], qty,
                          qty * rng.randint(3, 12)])
    write_csv("purchase", ["stock_id", "product_id", "date_id",
                           "qty_purchased", "cost"], purchases)


if __name__ == "__main__":
    main()
