use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "coverkit").unwrap();
        coverkit_py::init(&m).unwrap();
        f(py, &m);
    });
}

#[test]
fn group_exposes_inertia_data() {
    with_module(|_, m| {
        let g = m.getattr("Group").unwrap().call1((vec![2i64, 2],)).unwrap();
        assert_eq!(g.getattr("order").unwrap().extract::<u64>().unwrap(), 4);
        let inertia = g.call_method0("inertia_set").unwrap();
        assert_eq!(inertia.len().unwrap(), 3);
        let pairing: String = g.call_method1("pairing", (vec![1i64, 0], vec![1i64, 1])).unwrap().extract().unwrap();
        assert_eq!(pairing, "1/2");
    });
}

#[test]
fn cover_round_trip_from_fixture() {
    with_module(|_, m| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/covers/double_plane_quartic.json");
        let text = std::fs::read_to_string(path).unwrap();
        let cover = m.getattr("Cover").unwrap().call_method1("from_json", (text,)).unwrap();
        assert!(cover.call_method0("check_relations").unwrap().extract::<bool>().unwrap());
        let inv = cover.call_method0("invariants").unwrap();
        let k2: String = inv.get_item("k_squared").unwrap().extract().unwrap();
        let e: String = inv.get_item("euler_number").unwrap().extract().unwrap();
        assert_eq!((k2.as_str(), e.as_str()), ("2", "10"));
        let text: String = cover.call_method1("emit", ("singular",)).unwrap().extract().unwrap();
        assert!(text.contains("ring R = 0"));
    });
}

#[test]
fn module_functions() {
    with_module(|_, m| {
        let report = m.getattr("prop66").unwrap().call1((3i64,)).unwrap();
        assert_eq!(report.get_item("predicted_order").unwrap().extract::<i64>().unwrap(), 9);
        let (traces, _, negative): (usize, usize, bool) = m.getattr("verify_traces").unwrap().call1((8u32,)).unwrap().extract().unwrap();
        assert_eq!(traces, 10);
        assert!(negative);
        let genus: i64 = m
            .getattr("hurwitz_genus")
            .unwrap()
            .call1((0i64, vec![3i64], vec![vec![1i64], vec![2]], vec![2i64, 2]))
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(genus, 2);
    });
}

#[test]
fn errors_surface_as_value_error() {
    with_module(|py, m| {
        let err = m
            .getattr("Cover")
            .unwrap()
            .call1((vec![2i64], vec![vec![1i64]], "P2", vec![vec![5i64]]))
            .unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}
