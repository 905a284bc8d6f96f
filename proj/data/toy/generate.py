#!/usr/bin/env python3
"""Writes the two-zone toy fixture (scenario.ini, series.csv) into this directory.

Profiles and demand are synthetic and reproducible: a seeded PRNG plus daily
and weekly shapes. Rerunning the script must not change a single byte.
"""

import math
import pathlib
import random

HOURS = 168
START = "2016-01-04T00:00:00Z"
HERE = pathlib.Path(__file__).resolve().parent


def stamp(h):
    day = 4 + h // 24
    return f"2016-01-{day:02d}T{h % 24:02d}:00:00Z"


def fmt(x):
    return repr(round(x, 6))


def wind(rng, base, amp):
    out, level = [], base
    for h in range(HOURS):
        level += 0.15 * (base - level) + rng.gauss(0.0, 0.04)
        v = level + amp * math.sin(2 * math.pi * h / 96.0)
        out.append(min(0.95, max(0.01, v)))
    return out


def solar(rng, peak):
    out = []
    for h in range(HOURS):
        hod = h % 24
        s = math.sin(math.pi * (hod - 8) / 8.0) if 8 <= hod <= 16 else 0.0
        cloud = 0.6 + 0.4 * rng.random()
        out.append(max(0.0, peak * s * cloud))
    return out


def load(base, swing):
    out = []
    for h in range(HOURS):
        hod, day = h % 24, h // 24
        daily = 0.5 * (1 - math.cos(2 * math.pi * (hod - 3) / 24.0))
        weekend = 0.9 if day >= 5 else 1.0
        out.append((base + swing * daily) * weekend)
    return out


def main():
    rng = random.Random(20160104)
    cols = {
        "demand.AT.el": ("GW", load(7.0, 3.0)),
        "demand.AT.ht": ("GW", load(1.2, 0.6)),
        "demand.DE.el": ("GW", load(50.0, 22.0)),
        "profile.AT.wind_on": ("ratio", wind(rng, 0.17, 0.07)),
        "profile.AT.pv": ("ratio", solar(rng, 0.55)),
        "profile.AT.ror": ("ratio", [0.45 + 0.02 * math.sin(2 * math.pi * h / 168.0) for h in range(HOURS)]),
        "profile.DE.wind_on": ("ratio", wind(rng, 0.32, 0.10)),
        "profile.DE.pv": ("ratio", solar(rng, 0.5)),
        "inflow.AT.reservoir": ("GW", [0.6] * HOURS),
    }
    names = list(cols)
    with open(HERE / "series.csv", "w", newline="\n") as f:
        f.write("unit," + ",".join(cols[n][0] for n in names) + "\n")
        f.write("timestamp," + ",".join(names) + "\n")
        for h in range(HOURS):
            f.write(stamp(h) + "," + ",".join(fmt(cols[n][1][h]) for n in names) + "\n")
    (HERE / "scenario.ini").write_text(SCENARIO)


SCENARIO = f"""# Two-zone toy system, one winter week.
[scenario]
name = toy
horizon = {HOURS}
wacc = 0.05
start = {START}
focus_zone = AT
pv_horizon_years = 30

[zone AT]
renewable_target = 40000000
distance.DE = 500
demand_el = series.csv:demand.AT.el
demand_ht = series.csv:demand.AT.ht
co2_price = 25

[zone DE]
distance.AT = 500
demand_el = series.csv:demand.DE.el
co2_price = 25

[fuel gas]
co2_intensity = 0.202
air_pollution_var = 3.3
air_pollution_fix = 1500
price = 15

[fuel lignite]
co2_intensity = 0.399
air_pollution_var = 12.5
air_pollution_fix = 2000
price = 1.5

[fuel coal]
co2_intensity = 0.337
air_pollution_var = 9.8
air_pollution_fix = 2000
price = 7

[fuel wind]
air_pollution_fix = 2831
renewable = true

[fuel solar]
air_pollution_fix = 2500
renewable = true

[dispatchable AT.ccgt]
fuels = gas
capacity = 3.5
capex_per_kw = 830
lifetime = 25
om_fix = 27800
om_var = 4.2
eta_el = 0.58

[dispatchable AT.chp]
fuels = gas
capacity = 1.5
capex_per_kw = 830
lifetime = 25
om_fix = 27800
om_var = 4.2
chp.eta_el = 0.42
chp.beta = 0.15
chp.backpressure = 0.6
chp.max_heat = 1.0

[dispatchable AT.boiler]
fuels = gas
capacity = 2.0
capex_per_kw = 50
lifetime = 25
om_fix = 1900
om_var = 1
eta_ht = 0.92

[dispatchable DE.lignite]
fuels = lignite
capacity = 18
om_fix = 40500
om_var = 0.85
eta_el = 0.439

[dispatchable DE.coal]
fuels = coal
capacity = 20
om_fix = 31500
om_var = 3
eta_el = 0.46

[dispatchable DE.ccgt]
fuels = gas
capacity = 25
om_fix = 27800
om_var = 4.2
eta_el = 0.58

[intermittent AT.wind_on]
capacity = 2.5
capex_per_kw = 1040
lifetime = 30
om_fix = 12600
om_var = 1.35
expandable = true
pollution_fuel = wind
profile = series.csv:profile.AT.wind_on

[intermittent AT.pv]
capacity = 1.0
capex_per_kw = 625
lifetime = 40
om_fix = 10815
expandable = true
pollution_fuel = solar
profile = series.csv:profile.AT.pv

[intermittent AT.ror]
capacity = 5.5
om_fix = 60000
profile = series.csv:profile.AT.ror

[intermittent DE.wind_on]
capacity = 40
om_fix = 12600
om_var = 1.35
pollution_fuel = wind
profile = series.csv:profile.DE.wind_on

[intermittent DE.pv]
capacity = 40
om_fix = 10815
pollution_fuel = solar
profile = series.csv:profile.DE.pv

[storage AT.psp]
power_in = 3
power_out = 3.2
energy = 80
eta_in = 0.88
eta_out = 0.88
lifetime = 60

[storage AT.reservoir]
power_out = 2.5
energy = 300
eta_out = 0.9
lifetime = 60
inflow = series.csv:inflow.AT.reservoir

[link AT-DE]
ntc = 4.9
capex_per_mw_km = 1000
lifetime = 40
"""


if __name__ == "__main__":
    main()
