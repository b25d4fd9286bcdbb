use super::{degree_bound, InvariantRecord};

/// Aligned text table, one row per record.
pub fn render_table(records: &[InvariantRecord], partition: &[usize]) -> String {
    let header = ["label", "V", "E", "F", "deg_w", "deg_6j", "bound", "class", "epsilon", "normal form"];
    let rows: Vec<[String; 10]> = records
        .iter()
        .zip(partition)
        .map(|(r, &c)| {
            [
                r.label.clone(),
                r.stats.vertices.to_string(),
                r.stats.edges.to_string(),
                r.stats.faces.to_string(),
                r.deg_w.to_string(),
                r.deg_6j.to_string(),
                degree_bound(r).bound.to_string(),
                c.to_string(),
                r.epsilon.clone().unwrap_or_else(|| "-".into()),
                r.normal_form_text.clone(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let last = cells.len() - 1;
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == last {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = widths[i]));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// One JSON object per line.
pub fn records_to_jsonl(records: &[InvariantRecord], partition: &[usize]) -> String {
    let mut out = String::new();
    for (r, &c) in records.iter().zip(partition) {
        let mut v = serde_json::to_value(r).expect("record serializes");
        v["class"] = c.into();
        v["bound"] = serde_json::to_value(degree_bound(r)).expect("bound serializes");
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
