//! Cost grids, CSV tables and SVG charts built from the cost model.

mod chart;

use thiserror::Error;

use crate::econ::{effective_trip_cost, monthly_cost, CommuteMode, CostParams, NcfValue, ResidenceOption};
use crate::money::Cents;

pub use chart::{emit_curves, CurveKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("series for NCF {ncf} has {points} point(s); a curve needs at least 2")]
    TooFewPoints { ncf: f64, points: usize },
    #[error("nothing to plot: no NCF values")]
    NoSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostGridRow {
    pub label: String,
    pub distance: f64,
    pub one_way_time: f64,
    pub housing: Cents,
    pub mode: CommuteMode,
    pub trip_cost: Cents,
    /// Monthly total per NCF column; `None` where the option is unavailable.
    pub cells: Vec<Option<Cents>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostGrid {
    pub ncfs: Vec<NcfValue>,
    pub rows: Vec<CostGridRow>,
}

pub fn cost_grid(options: &[ResidenceOption], ncfs: &[NcfValue], params: &CostParams) -> CostGrid {
    let rows = options
        .iter()
        .map(|option| CostGridRow {
            label: option.label.clone(),
            distance: option.distance,
            one_way_time: option.one_way_time,
            housing: option.housing,
            mode: option.mode,
            trip_cost: effective_trip_cost(option, params),
            cells: ncfs
                .iter()
                .map(|&ncf| {
                    let cost = monthly_cost(option, ncf, params);
                    cost.feasible.then_some(cost.total)
                })
                .collect(),
        })
        .collect();
    CostGrid {
        ncfs: ncfs.to_vec(),
        rows,
    }
}

impl CostGrid {
    /// Header plus one line per row. Money is in whole dollars, unavailable
    /// cells read `N/A`, NCF columns are headed by their value.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = ["label", "distance", "time", "housing", "mode", "trip_cost"]
            .map(String::from)
            .to_vec();
        header.extend(self.ncfs.iter().map(|n| n.value().to_string()));
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![
                row.label.clone(),
                row.distance.to_string(),
                row.one_way_time.to_string(),
                row.housing.round_dollars().to_string(),
                row.mode.to_string(),
                row.trip_cost.round_dollars().to_string(),
            ];
            rec.extend(row.cells.iter().map(|c| match c {
                Some(total) => total.round_dollars().to_string(),
                None => "N/A".to_string(),
            }));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

pub fn emit_cost_grid(options: &[ResidenceOption], ncfs: &[NcfValue], params: &CostParams) -> String {
    cost_grid(options, ncfs, params).to_csv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{table3_options, TABLE3_NCF_GRID};

    fn grid_ncfs() -> Vec<NcfValue> {
        TABLE3_NCF_GRID.iter().map(|&v| NcfValue::new(v).unwrap()).collect()
    }

    #[test]
    fn anchors() {
        let g = cost_grid(&table3_options(), &grid_ncfs(), &CostParams::default());
        let cell = |label: &str, col: usize| {
            g.rows.iter().find(|r| r.label == label).unwrap().cells[col].map(Cents::round_dollars)
        };
        assert_eq!(cell("5mi", 0), Some(4000));
        assert_eq!(cell("6000mi", 3), Some(7580));
        assert_eq!(cell("1000mi", 6), Some(1280));
        assert_eq!(cell("6000mi", 0), None);
    }

    #[test]
    fn full_ncf_column_is_housing() {
        let one = [NcfValue::ONE];
        let g = cost_grid(&table3_options(), &one, &CostParams::default());
        for row in &g.rows {
            assert_eq!(row.cells[0], Some(row.housing), "{}", row.label);
        }
    }

    #[test]
    fn single_row_is_two_lines() {
        let options = &table3_options()[1..2];
        let csv = emit_cost_grid(options, &grid_ncfs(), &CostParams::default());
        assert_eq!(
            csv,
            "label,distance,time,housing,mode,trip_cost,0,0.2,0.4,0.6,0.8,0.9,0.95\n\
             5mi,5,20,3500,tram_bus,25,4000,3900,3800,3700,3600,3550,3525\n"
        );
    }

    #[test]
    fn unavailable_cells_read_na() {
        let csv = emit_cost_grid(&table3_options(), &grid_ncfs(), &CostParams::default());
        let line = csv.lines().find(|l| l.starts_with("6000mi,")).unwrap();
        assert_eq!(line.matches("N/A").count(), 3);
    }
}
