from .core import (BinaryChain, CellComplex, InvalidFamilyError,
                   InvalidSizeError, boundary, coboundary, pairing,
                   validate_chain)
from .builders import (build_lattice, cubic3, hypercubic4, modified_cubic3,
                       rotated_cubic3, rotated_modified_cubic3,
                       triangle_prism3)
from .triangulation3d import (Spacetime4D, enumerate_tetrahedra,
                              four_colored_triangulation3,
                              modified_hypercubic4)
from .homology import (class_vector, homology_basis, kernel_basis2, rank2,
                       rref2, row_space_reduce, smith_rank_oracle, solve2)
from .jsonio import (complex_from_dict, complex_from_json, complex_to_dict,
                     complex_to_json)
