use nilsoliton_core::liealg::Matrix;

pub fn entries<T>(m: &Matrix<T>, show: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    m.rows().map(|r| r.iter().map(&show).collect()).collect()
}

/// Rows in brackets with right-aligned columns.
pub fn matrix_block(rows: &[Vec<String>]) -> String {
    let ncols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(x, w)| format!("{x:>w$}"))
            .collect();
        out.push_str("  [ ");
        out.push_str(&cells.join("  "));
        out.push_str(" ]\n");
    }
    out
}
