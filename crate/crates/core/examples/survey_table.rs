//! Parallel survey of imaginary quadratic fields, written as CSV and JSON.

use polya::survey::{cmd_growth, cmd_survey_imaginary, Format, SurveyConfig};

fn main() {
    let cfg = SurveyConfig { workers: 4, ..SurveyConfig::default() };
    let table = cmd_survey_imaginary(200, &cfg).unwrap();
    print!("{}", table.to_csv_string());

    let growth = cmd_growth(10_000, &cfg).unwrap();
    growth.write(Format::Json, std::io::stdout().lock()).unwrap();
    println!();
}
