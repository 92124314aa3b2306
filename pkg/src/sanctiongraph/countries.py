"""Country code normalization.

Codes are ISO 3166-1 alpha-2. Names that show up in notices and in
parsed records (including a handful of non-sovereign territories) are
mapped through a fixed table.
"""

import re

UNKNOWN = "XX"

_CODE_RE = re.compile(r"^[A-Z]{2}$")

NAME_TO_CODE = {
    "AFGHANISTAN": "AF",
    "ARGENTINA": "AR",
    "ARMENIA": "AM",
    "AUSTRALIA": "AU",
    "AUSTRIA": "AT",
    "BAHRAIN": "BH",
    "BELARUS": "BY",
    "BELGIUM": "BE",
    "BOLIVIA": "BO",
    "BRAZIL": "BR",
    "BRITISH VIRGIN ISLANDS": "VG",
    "BULGARIA": "BG",
    "CANADA": "CA",
    "CAYMAN ISLANDS": "KY",
    "CHILE": "CL",
    "CHINA": "CN",
    "COSTA RICA": "CR",
    "CUBA": "CU",
    "CYPRUS": "CY",
    "CZECH REPUBLIC": "CZ",
    "DENMARK": "DK",
    "EGYPT": "EG",
    "ESTONIA": "EE",
    "FINLAND": "FI",
    "FRANCE": "FR",
    "GEORGIA": "GE",
    "GERMANY": "DE",
    "GREECE": "GR",
    "HONG KONG": "HK",
    "INDIA": "IN",
    "INDONESIA": "ID",
    "IRAN": "IR",
    "IRAQ": "IQ",
    "IRELAND": "IE",
    "ISRAEL": "IL",
    "ITALY": "IT",
    "JAMAICA": "JM",
    "JAPAN": "JP",
    "JORDAN": "JO",
    "KAZAKHSTAN": "KZ",
    "KENYA": "KE",
    "KYRGYZSTAN": "KG",
    "LAOS": "LA",
    "LATVIA": "LV",
    "LEBANON": "LB",
    "LITHUANIA": "LT",
    "MACAU": "MO",
    "MACAO": "MO",
    "MADAGASCAR": "MG",
    "MALAYSIA": "MY",
    "MALTA": "MT",
    "MEXICO": "MX",
    "MOROCCO": "MA",
    "MYANMAR": "MM",
    "BURMA": "MM",
    "NETHERLANDS": "NL",
    "NEW ZEALAND": "NZ",
    "NORTH KOREA": "KP",
    "OMAN": "OM",
    "PAKISTAN": "PK",
    "PANAMA": "PA",
    "PERU": "PE",
    "PHILIPPINES": "PH",
    "POLAND": "PL",
    "PORTUGAL": "PT",
    "QATAR": "QA",
    "ROMANIA": "RO",
    "RUSSIA": "RU",
    "SAUDI ARABIA": "SA",
    "SERBIA": "RS",
    "SINGAPORE": "SG",
    "SLOVAKIA": "SK",
    "SOUTH AFRICA": "ZA",
    "SOUTH KOREA": "KR",
    "SPAIN": "ES",
    "SRI LANKA": "LK",
    "SWEDEN": "SE",
    "SWITZERLAND": "CH",
    "SYRIA": "SY",
    "TAIWAN": "TW",
    "TAJIKISTAN": "TJ",
    "THAILAND": "TH",
    "TURKEY": "TR",
    "TURKIYE": "TR",
    "UAE": "AE",
    "UNITED ARAB EMIRATES": "AE",
    "UK": "GB",
    "UNITED KINGDOM": "GB",
    "UKRAINE": "UA",
    "UNITED STATES": "US",
    "UZBEKISTAN": "UZ",
    "VENEZUELA": "VE",
    "VIETNAM": "VN",
    "YEMEN": "YE",
    "UNKNOWN": UNKNOWN,
}


class BadCountryCode(ValueError):
    """A country field that is neither a two-letter code nor a known name."""


def normalize_country(value) -> str:
    if not isinstance(value, str):
        raise BadCountryCode(f"country must be text, got {value!r}")
    key = " ".join(value.strip().upper().split())
    key = NAME_TO_CODE.get(key, key)
    if not _CODE_RE.match(key):
        raise BadCountryCode(f"not a country code: {value!r}")
    return key


def is_country_code(value: str) -> bool:
    return bool(_CODE_RE.match(value))
