// Two inscribed zonotopes: the unit cube, and the B3 zonotope (truncated
// cuboctahedron) with lambda taken from the strong inscribed cone.
//
//   sample_inscribed_cube [out.obj]

#include <fstream>
#include <iostream>

#include "insc/insc.hpp"

using namespace insc;

int main(int argc, char** argv) {
    const RationalField QQ;

    auto cube = new_arrangement(QQ, 3, std::vector<Vec<mpq_class>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    Zonotope<RationalField> zc(cube, {1, 1, 1}, QForm<RationalField>::identity(QQ, 3));
    auto c = verify_inscribed(zc);
    std::cout << "cube: inscribed " << to_string(c.verdict) << ", radius^2 " << QQ.format(c.radius2) << '\n';

    auto b3 = gen_D(3, 3);
    auto q = QForm<RationalField>::identity(QQ, 3);
    auto space = z_in_space(b3, q);
    std::cout << "B3: kernel dimension " << space.dim << '\n';
    auto cone = z_in_cone_sample(b3, q);
    if (!cone.lambda) {
        std::cerr << "no positive kernel vector\n";
        return 1;
    }
    Zonotope<RationalField> z(b3, *cone.lambda, q);
    auto v = verify_inscribed(z);
    std::cout << "B3: " << vertices(z).points.size() << " vertices, inscribed " << to_string(v.verdict) << ", radius^2 "
              << QQ.format(v.radius2) << '\n';

    // a lambda off the kernel breaks some 2-face
    auto bad = *cone.lambda;
    bad[0] += 1;
    auto tf = two_faces(Zonotope<RationalField>(b3, bad, q));
    std::cout << "perturbed: two_faces " << to_string(tf.verdict) << '\n';

    if (argc > 1) {
        std::ofstream os(argv[1]);
        write_obj(os, export_mesh(z));
        std::cout << "wrote " << argv[1] << '\n';
    }
    return 0;
}
