"""
Example files demonstrating the usage of the engine.

Files:
- root_systems_demo.py: Root systems, Chevalley bases and the root poset
- real_forms_demo.py: θ, τ, σ and the σ-constants on sl(2m-1)
- nonregular_demo.py: The non-regular complex structure, its balanced frame and the sl(3) block
- flag_bundle_demo.py: Astheno-Kähler constants and semi-definiteness scans on SU(5)/T
- reductive_demo.py: d(iξ) and dd^c computations on compact forms
"""
