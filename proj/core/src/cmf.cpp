#include "dualshear/cmf.hpp"

#include <cmath>
#include <stdexcept>

namespace dsh {

namespace {

// Daubechies extremal-phase lowpass taps, sum h = sqrt(2).
const std::vector<std::vector<double>> kDaubechies = {
    {0.7071067811865475244, 0.7071067811865475244},
    {0.4829629131445341434, 0.8365163037378079056, 0.2241438680420133810,
     -0.1294095225512603812},
    {0.3326705529500826160, 0.8068915093110925765, 0.4598775021184915701,
     -0.1350110200102545887, -0.08544127388202666169, 0.03522629188570953660},
    {0.2303778133088965009, 0.7148465705529156471, 0.6308807679298589079,
     -0.02798376941685985421, -0.1870348117190930841, 0.03084138183556076363,
     0.03288301166688519974, -0.01059740178506903210},
    {0.1601023979741929145, 0.6038292697971896705, 0.7243085284377729277,
     0.1384281459013207315, -0.2422948870663820319, -0.03224486958463837465,
     0.07757149384004571352, -0.006241490212798274274, -0.01258075199908199947,
     0.003335725285473771278},
    {0.1115407433501094636, 0.4946238903984530857, 0.7511339080210953507,
     0.3152503517091976291, -0.2262646939654398201, -0.1297668675672619356,
     0.09750160558732304910, 0.02752286553030572863, -0.03158203931748602957,
     0.0005538422011614961393, 0.004777257510945510640, -0.001077301085308479565},
    {0.07785205408500917902, 0.3965393194819173065, 0.7291320908462351199,
     0.4697822874051931225, -0.1439060039285649754, -0.2240361849938749826,
     0.07130921926683026475, 0.08061260915108307191, -0.03802993693501441358,
     -0.01657454163066688065, 0.01255099855609984061, 0.0004295779729213665211,
     -0.001801640704047490915, 0.0003537137999745202484},
    {0.05441584224310400996, 0.3128715909142999707, 0.6756307362972898068,
     0.5853546836542067128, -0.01582910525634930567, -0.2840155429615469265,
     0.0004724845739132827704, 0.1287474266204784589, -0.01736930100180754617,
     -0.04408825393079475151, 0.01398102791739828165, 0.008746094047405776716,
     -0.004870352993451574310, -0.0003917403733769470463, 0.0006754494064505693664,
     -0.0001174767841247695337},
    {0.03807794736387834659, 0.2438346746125903537, 0.6048231236901111119,
     0.6572880780513005381, 0.1331973858250075762, -0.2932737832791749088,
     -0.09684078322297646051, 0.1485407493381063801, 0.03072568147933337921,
     -0.06763282906132997368, 0.0002509471148314519576, 0.02236166212367909721,
     -0.004723204757751397278, -0.004281503682463429834, 0.001847646883056226477,
     0.0002303857635231959672, -0.0002519631889427101370, 0.00003934732031627159948},
    {0.02667005790055555359, 0.1881768000776914890, 0.5272011889317255865,
     0.6884590394536035657, 0.2811723436605774607, -0.2498464243273153794,
     -0.1959462743773770435, 0.1273693403357932601, 0.09305736460357235116,
     -0.07139414716639708715, -0.02945753682187581286, 0.03321267405934100174,
     0.003606553566956169655, -0.01073317548333057504, 0.001395351747052901166,
     0.001992405295185056117, -0.0006858566949597116266, -0.0001164668551292854510,
     0.00009358867032006959133, -0.00001326420289452124481},
};

}  // namespace

int ConjugateMirrorFilter::max_order() { return static_cast<int>(kDaubechies.size()); }

ConjugateMirrorFilter::ConjugateMirrorFilter(int K) : k_(K) {
  if (K < 1 || K > max_order())
    throw std::invalid_argument("ConjugateMirrorFilter: order outside the filter table");
  h_ = kDaubechies[K - 1];
  double num = 0;
  for (std::size_t n = 0; n < h_.size(); ++n) num += static_cast<double>(n) * h_[n];
  centroid_ = num / std::sqrt(2.0);
}

cplx ConjugateMirrorFilter::m0_z(cplx z) const {
  cplx acc = h_.back();
  for (std::size_t i = h_.size() - 1; i-- > 0;) acc = acc * z + h_[i];
  return acc * (1.0 / std::sqrt(2.0));
}

cplx ConjugateMirrorFilter::m0(double eta) const {
  return m0_z(std::polar(1.0, -2.0 * M_PI * eta));
}

cplx ConjugateMirrorFilter::m1(double eta) const {
  return m1_z(std::polar(1.0, -2.0 * M_PI * eta));
}

}  // namespace dsh
