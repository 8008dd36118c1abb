//! Country inference from free-text affiliation addresses.
//!
//! Addresses are normalized (lowercased, periods dropped, other punctuation
//! turned into spaces) and matched against a bundled gazetteer by suffix on a
//! word boundary; the longest matching name wins. Trailing postal codes are
//! skipped, and US addresses ending in a state name or a state abbreviation
//! plus ZIP code resolve to `US`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// ISO 3166-1 alpha-2 code, or [`CountryCode::UNKNOWN`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountryCode(&'static str);

impl CountryCode {
    pub const UNKNOWN: CountryCode = CountryCode("UNKNOWN");

    pub fn as_str(self) -> &'static str {
        self.0
    }

    pub fn is_unknown(self) -> bool {
        self == Self::UNKNOWN
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// (normalized name, code). Names are lowercase without periods.
const GAZETTEER: &[(&str, &str)] = &[
    ("afghanistan", "AF"), ("albania", "AL"), ("algeria", "DZ"), ("andorra", "AD"),
    ("angola", "AO"), ("argentina", "AR"), ("armenia", "AM"), ("australia", "AU"),
    ("austria", "AT"), ("azerbaijan", "AZ"), ("bahrain", "BH"), ("bangladesh", "BD"),
    ("belarus", "BY"), ("belgium", "BE"), ("benin", "BJ"), ("bhutan", "BT"), ("bolivia", "BO"),
    ("bosnia and herzegovina", "BA"), ("bosnia & herceg", "BA"), ("botswana", "BW"),
    ("brazil", "BR"), ("brasil", "BR"), ("brunei", "BN"), ("bulgaria", "BG"),
    ("burkina faso", "BF"), ("cambodia", "KH"), ("cameroon", "CM"), ("canada", "CA"),
    ("chile", "CL"), ("china", "CN"), ("peoples r china", "CN"), ("pr china", "CN"),
    ("p r china", "CN"), ("people s republic of china", "CN"),
    ("peoples republic of china", "CN"), ("colombia", "CO"), ("costa rica", "CR"),
    ("croatia", "HR"), ("cuba", "CU"), ("cyprus", "CY"), ("czech republic", "CZ"),
    ("czechia", "CZ"), ("denmark", "DK"), ("dominican republic", "DO"), ("ecuador", "EC"),
    ("egypt", "EG"), ("el salvador", "SV"), ("estonia", "EE"), ("ethiopia", "ET"),
    ("fiji", "FJ"), ("finland", "FI"), ("france", "FR"), ("georgia", "GE"), ("germany", "DE"),
    ("deutschland", "DE"), ("ghana", "GH"), ("greece", "GR"), ("guatemala", "GT"),
    ("honduras", "HN"), ("hong kong", "HK"), ("hong kong sar", "HK"), ("hungary", "HU"),
    ("iceland", "IS"), ("india", "IN"), ("indonesia", "ID"), ("iran", "IR"),
    ("islamic republic of iran", "IR"), ("iraq", "IQ"), ("ireland", "IE"), ("israel", "IL"),
    ("italy", "IT"), ("jamaica", "JM"), ("japan", "JP"), ("jordan", "JO"),
    ("kazakhstan", "KZ"), ("kenya", "KE"), ("kuwait", "KW"), ("kyrgyzstan", "KG"),
    ("laos", "LA"), ("latvia", "LV"), ("lebanon", "LB"), ("libya", "LY"),
    ("liechtenstein", "LI"), ("lithuania", "LT"), ("luxembourg", "LU"), ("macau", "MO"),
    ("macao", "MO"), ("madagascar", "MG"), ("malawi", "MW"), ("malaysia", "MY"),
    ("mali", "ML"), ("malta", "MT"), ("mauritius", "MU"), ("mexico", "MX"), ("moldova", "MD"),
    ("monaco", "MC"), ("mongolia", "MN"), ("montenegro", "ME"), ("morocco", "MA"),
    ("mozambique", "MZ"), ("myanmar", "MM"), ("namibia", "NA"), ("nepal", "NP"),
    ("netherlands", "NL"), ("the netherlands", "NL"), ("holland", "NL"),
    ("new zealand", "NZ"), ("nicaragua", "NI"), ("niger", "NE"), ("nigeria", "NG"),
    ("north macedonia", "MK"), ("macedonia", "MK"), ("norway", "NO"), ("oman", "OM"),
    ("pakistan", "PK"), ("palestine", "PS"), ("panama", "PA"), ("paraguay", "PY"),
    ("peru", "PE"), ("philippines", "PH"), ("poland", "PL"), ("portugal", "PT"),
    ("puerto rico", "PR"), ("qatar", "QA"), ("romania", "RO"), ("russia", "RU"),
    ("russian federation", "RU"), ("rwanda", "RW"), ("saudi arabia", "SA"),
    ("senegal", "SN"), ("serbia", "RS"), ("singapore", "SG"), ("slovakia", "SK"),
    ("slovak republic", "SK"), ("slovenia", "SI"), ("somalia", "SO"), ("south africa", "ZA"),
    ("south korea", "KR"), ("korea", "KR"), ("republic of korea", "KR"),
    ("rep of korea", "KR"), ("spain", "ES"), ("espana", "ES"), ("sri lanka", "LK"),
    ("sudan", "SD"), ("sweden", "SE"), ("switzerland", "CH"), ("syria", "SY"),
    ("taiwan", "TW"), ("taiwan roc", "TW"), ("republic of china", "TW"),
    ("tajikistan", "TJ"), ("tanzania", "TZ"), ("thailand", "TH"), ("togo", "TG"),
    ("trinidad and tobago", "TT"), ("tunisia", "TN"), ("turkey", "TR"), ("turkiye", "TR"),
    ("uganda", "UG"), ("ukraine", "UA"), ("united arab emirates", "AE"), ("uae", "AE"),
    ("u arab emirates", "AE"), ("united kingdom", "GB"), ("uk", "GB"),
    ("great britain", "GB"), ("england", "GB"), ("scotland", "GB"), ("wales", "GB"),
    ("north ireland", "GB"), ("northern ireland", "GB"), ("united states", "US"),
    ("united states of america", "US"), ("usa", "US"), ("us", "US"), ("uruguay", "UY"),
    ("uzbekistan", "UZ"), ("venezuela", "VE"), ("vietnam", "VN"), ("viet nam", "VN"),
    ("yemen", "YE"), ("zambia", "ZM"), ("zimbabwe", "ZW"),
];

const US_STATES: &[(&str, &str)] = &[
    ("alabama", "al"), ("alaska", "ak"), ("arizona", "az"), ("arkansas", "ar"),
    ("california", "ca"), ("colorado", "co"), ("connecticut", "ct"), ("delaware", "de"),
    ("district of columbia", "dc"), ("florida", "fl"), ("georgia", "ga"), ("hawaii", "hi"), ("idaho", "id"),
    ("illinois", "il"), ("indiana", "in"), ("iowa", "ia"), ("kansas", "ks"),
    ("kentucky", "ky"), ("louisiana", "la"), ("maine", "me"), ("maryland", "md"),
    ("massachusetts", "ma"), ("michigan", "mi"), ("minnesota", "mn"), ("mississippi", "ms"),
    ("missouri", "mo"), ("montana", "mt"), ("nebraska", "ne"), ("nevada", "nv"),
    ("new hampshire", "nh"), ("new jersey", "nj"), ("new mexico", "nm"), ("new york", "ny"),
    ("north carolina", "nc"), ("north dakota", "nd"), ("ohio", "oh"), ("oklahoma", "ok"),
    ("oregon", "or"), ("pennsylvania", "pa"), ("rhode island", "ri"),
    ("south carolina", "sc"), ("south dakota", "sd"), ("tennessee", "tn"), ("texas", "tx"),
    ("utah", "ut"), ("vermont", "vt"), ("virginia", "va"), ("washington", "wa"),
    ("west virginia", "wv"), ("wisconsin", "wi"), ("wyoming", "wy"),
];

fn normalize(address: &str) -> String {
    let mut out = String::with_capacity(address.len());
    let mut pending_space = false;
    for c in address.chars().flat_map(char::to_lowercase) {
        if c == '.' || c == '\'' {
            continue;
        }
        if c.is_alphanumeric() || c == '&' {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        } else {
            pending_space = true;
        }
    }
    out
}

fn ends_with_word(haystack: &str, needle: &str) -> bool {
    haystack.strip_suffix(needle).is_some_and(|rest| rest.is_empty() || rest.ends_with(' '))
}

fn longest_suffix(normalized: &str) -> Option<&'static str> {
    GAZETTEER
        .iter()
        .filter(|(name, _)| ends_with_word(normalized, name))
        .max_by_key(|(name, _)| name.len())
        .map(|&(_, code)| code)
}

fn is_zip(token: &str) -> bool {
    let digits: Vec<&str> = token.split('-').collect();
    digits.first().is_some_and(|d| d.len() == 5 && d.bytes().all(|b| b.is_ascii_digit()))
}

fn us_state(address: &str) -> bool {
    let last = address.rsplit(',').find(|s| !s.trim().is_empty()).unwrap_or("");
    let last = normalize(last);
    let words: Vec<&str> = last.split(' ').collect();
    if let [.., state, zip] = words.as_slice() {
        if is_zip(zip) && US_STATES.iter().any(|(_, abbr)| abbr == state) {
            return true;
        }
    }
    let stripped: Vec<&str> = words.iter().copied().filter(|w| !is_zip(w)).collect();
    let stripped = stripped.join(" ");
    US_STATES.iter().any(|(name, _)| ends_with_word(&stripped, name))
}

/// Resolves one address to a country code.
pub fn infer_country(address: &str) -> CountryCode {
    let mut normalized = normalize(address);
    loop {
        if let Some(code) = longest_suffix(&normalized) {
            return CountryCode(code);
        }
        // drop a trailing token carrying digits (postal codes) and retry
        match normalized.rsplit_once(' ') {
            Some((head, tail)) if tail.bytes().any(|b| b.is_ascii_digit()) => {
                normalized = String::from(head);
            }
            _ => break,
        }
    }
    if us_state(address) {
        return CountryCode("US");
    }
    CountryCode::UNKNOWN
}

/// Resolves each address independently.
pub fn infer_countries<S: AsRef<str>>(addresses: &[S]) -> Vec<CountryCode> {
    addresses.iter().map(|a| infer_country(a.as_ref())).collect()
}
