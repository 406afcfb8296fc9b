//! Parameter reports and their JSON / CSV forms.

use serde::Serialize;

/// All closed-form parameters for one `n`. Field names are the JSON keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterReport {
    pub n: u64,
    pub pi_n: u64,
    pub pendant_vertices: Vec<u64>,
    pub pendant_count: usize,
    pub degree_two_vertices: Vec<u64>,
    pub diameter: u32,
    pub max_degree_vertices: Vec<u64>,
    pub max_degree_count: usize,
    pub delta: u64,
    pub cut_vertices: Vec<u64>,
    pub clique_number: u64,
    pub chromatic_number: u64,
    pub matching_number: u64,
    pub edge_cover_number: u64,
    pub independence_number: u64,
    pub vertex_cover_number: u64,
    pub domination_number: u64,
    pub chromatic_index: u64,
    pub is_perfect: bool,
    pub odd_exponent_count: usize,
    pub largest_tied_index: usize,
}

/// CSV column order for [`ParameterReport::csv_record`].
pub const REPORT_COLUMNS: [&str; 21] = [
    "n",
    "pi_n",
    "pendant_vertices",
    "pendant_count",
    "degree_two_vertices",
    "diameter",
    "max_degree_vertices",
    "max_degree_count",
    "delta",
    "cut_vertices",
    "clique_number",
    "chromatic_number",
    "matching_number",
    "edge_cover_number",
    "independence_number",
    "vertex_cover_number",
    "domination_number",
    "chromatic_index",
    "is_perfect",
    "odd_exponent_count",
    "largest_tied_index",
];

/// Vertex lists inside one CSV cell are `;`-separated.
pub fn join_list(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

impl ParameterReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.pi_n.to_string(),
            join_list(&self.pendant_vertices),
            self.pendant_count.to_string(),
            join_list(&self.degree_two_vertices),
            self.diameter.to_string(),
            join_list(&self.max_degree_vertices),
            self.max_degree_count.to_string(),
            self.delta.to_string(),
            join_list(&self.cut_vertices),
            self.clique_number.to_string(),
            self.chromatic_number.to_string(),
            self.matching_number.to_string(),
            self.edge_cover_number.to_string(),
            self.independence_number.to_string(),
            self.vertex_cover_number.to_string(),
            self.domination_number.to_string(),
            self.chromatic_index.to_string(),
            self.is_perfect.to_string(),
            self.odd_exponent_count.to_string(),
            self.largest_tied_index.to_string(),
        ]
    }

    /// Header line plus one data row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(REPORT_COLUMNS).expect("in-memory write");
        w.write_record(self.csv_record()).expect("in-memory write");
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
