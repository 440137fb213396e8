use super::{get, shipped_names, CatalogEntry};

pub fn entry_json(entry: &CatalogEntry) -> serde_json::Value {
    let mut v = serde_json::json!({
        "name": entry.name,
        "g": entry.g.to_json_value(),
        "q_p": entry.q_p.to_string(),
        "f_expected": entry.f_expected.to_json_value(),
        "notes": entry.notes,
    });
    if let Some(t) = &entry.t {
        v["t"] = t.to_string().into();
    }
    if let Some(range) = &entry.param_range {
        v["t_range"] = range.to_string().into();
    }
    if let Some(p) = &entry.printed {
        v["printed"] = serde_json::json!({"g": p.g, "p": p.p});
    }
    v
}

/// Every shipped instance; families at the default parameter.
pub fn catalog_json() -> serde_json::Value {
    let entries: Vec<_> = shipped_names()
        .iter()
        .map(|n| entry_json(&get(n).expect("shipped name")))
        .collect();
    serde_json::json!({ "entries": entries })
}

pub fn catalog_markdown() -> String {
    let mut out = String::from("# Catalog\n\nGenerated by `propmap catalog --markdown`. Variables follow the row-major\nconvention `z(i*s + j + 1) = Z[i][j]`; the source map `g` uses `z1..z(r+s)`.\n");
    for name in shipped_names() {
        let e = get(&name).expect("shipped name");
        let sig = e.g.signature();
        out += &format!("\n## {}\n\n", e.label());
        out += &format!("- signature: D({},{}) -> D({},{})\n", sig.r, sig.s, sig.rp, sig.sp);
        if let Some(range) = &e.param_range {
            out += &format!("- parameter: t in {range}\n");
        }
        out += &format!("- Q_P = {}\n", e.q_p);
        out += &format!("- g = {}\n", e.g);
        out += "- f:\n\n```\n";
        out += &e.f_expected.to_string();
        out += "\n```\n";
        for note in &e.notes {
            out += &format!("\n> {note}\n");
        }
    }
    out
}
