//! The shipped data files describe the same objects as the built-ins.

mod common;

use common::{data_dir, equivalent};
use crosssec::lang::{load_machine, Et0lSystem, Machine, Nfa};
use crosssec::separation::{builtin_k, extract_k, InstanceDescriptor};
use crosssec::verify::refute::bad_candidates;

fn read(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap()
}

#[test]
fn et0l_files_match_builtins() {
    for (file, sys) in [("et0l_l2.json", Et0lSystem::l2()), ("et0l_l3.json", Et0lSystem::l3())] {
        let loaded = Et0lSystem::from_json(&read(file)).unwrap();
        let n = 12;
        let bound = n + sys.alphabet().len();
        assert_eq!(loaded.generate(n, bound).unwrap(), sys.generate(n, bound).unwrap(), "{file}");
    }
}

#[test]
fn bad_candidate_files_match_builtins() {
    for (name, nfa) in bad_candidates() {
        let file = format!("bad_candidate_{}.json", name.replace('-', "_"));
        let Machine::Nfa(loaded) = load_machine(&read(&file)).unwrap() else {
            panic!("{file} is not an nfa");
        };
        assert!(equivalent(&loaded, &nfa), "{file}");
    }
}

#[test]
fn instance_descriptors() {
    for (file, builtin) in [("instance_anbncn.json", "anbncn"), ("instance_www.json", "www")] {
        let d = InstanceDescriptor::from_json(&read(file)).unwrap();
        let inst = d.instantiate(&data_dir()).unwrap();
        let (b, k) = builtin_k(builtin).unwrap();
        assert_eq!(inst.b, b);
        assert_eq!(extract_k(&inst.l_k, 9), k.enumerate(9), "{file}");
        let again = InstanceDescriptor::from_json(&d.to_json()).unwrap();
        assert_eq!(again.to_json(), d.to_json());
    }
    let d = InstanceDescriptor::from_json(&read("instance_regular.json")).unwrap();
    let inst = d.instantiate(&data_dir()).unwrap();
    let k = Nfa::from_json(&read("k_a_star_b.json")).unwrap();
    assert_eq!(extract_k(&inst.l_k, 7), k.enumerate(7));
}

#[test]
fn malformed_descriptor_reports_position() {
    let e = InstanceDescriptor::from_json("{\"B\": [\"a\"],\n \"K\": 3}").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
}
