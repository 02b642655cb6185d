/* ax_layer2.c: conv 3x3, 4 -> 6 channels -- generated, do not edit. */

#include "ax_net.h"

void ax_layer2_run(const int8_t *in, int8_t *out)
{
    int16_t t[36];
    for (int32_t oy = 0; oy < 7; ++oy) {
        for (int32_t ox = 0; ox < 7; ++ox) {
            {
                int32_t kk = 0;
                for (int32_t ky = 0; ky < 3; ++ky) {
                    const int32_t iy = oy * 1 - 1 + ky;
                    for (int32_t kx = 0; kx < 3; ++kx) {
                        const int32_t ix = ox * 1 - 1 + kx;
                        for (int32_t ci = 0; ci < 4; ++ci) {
                            if (iy < 0 || iy >= 7 || ix < 0 || ix >= 7) {
                                t[kk] = 0;
                            } else {
                                t[kk] = (int16_t)((int32_t)in[(iy * 7 + ix) * 4 + ci] + (64));
                            }
                            ++kk;
                        }
                    }
                }
            }
            {
                int32_t acc = -7052;
                acc = ax_dmac(acc, 65517, t[0], t[1]);
                acc = ax_dmac(acc, 3342361, t[2], t[3]);
                acc = ax_dmac(acc, 2949120, t[4], t[5]);
                acc = ax_dmac(acc, -1572860, t[6], t[7]);
                acc = ax_dmac(acc, -851968, t[8], t[9]);
                acc = ax_dmac(acc, 983068, t[10], t[11]);
                acc = ax_dmac(acc, -3538944, t[12], t[13]);
                acc = ax_dmac(acc, -1376260, t[14], t[15]);
                acc = ax_dmac(acc, 32, t[16], t[17]);
                acc = ax_dmac(acc, 2752458, t[18], t[19]);
                acc = ax_dmac(acc, 63, t[20], t[21]);
                acc = ax_dmac(acc, -2752512, t[22], t[23]);
                acc = ax_dmac(acc, 0, t[24], t[25]);
                acc = ax_dmac(acc, 3866624, t[26], t[27]);
                acc = ax_dmac(acc, 2162658, t[28], t[29]);
                acc = ax_dmac(acc, -393216, t[30], t[31]);
                acc = ax_dmac(acc, 1048591, t[32], t[33]);
                acc = ax_dmac(acc, 1179665, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 0] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 3681;
                acc = ax_dmac(acc, 39, t[0], t[1]);
                acc = ax_dmac(acc, 589850, t[2], t[3]);
                acc = ax_dmac(acc, -1769472, t[4], t[5]);
                acc = ax_dmac(acc, 1638455, t[6], t[7]);
                acc = ax_dmac(acc, -3407872, t[8], t[9]);
                acc = ax_dmac(acc, -3997696, t[10], t[11]);
                acc = ax_dmac(acc, 20, t[12], t[13]);
                acc = ax_dmac(acc, 2359240, t[14], t[15]);
                acc = ax_dmac(acc, -2031616, t[16], t[17]);
                acc = ax_dmac(acc, 2, t[18], t[19]);
                acc = ax_dmac(acc, 2424832, t[20], t[21]);
                acc = ax_dmac(acc, -3669971, t[22], t[23]);
                acc = ax_dmac(acc, 720936, t[24], t[25]);
                acc = ax_dmac(acc, 65524, t[26], t[27]);
                acc = ax_dmac(acc, 1966080, t[28], t[29]);
                acc = ax_dmac(acc, -3407883, t[30], t[31]);
                acc = ax_dmac(acc, -1966024, t[32], t[33]);
                acc = ax_dmac(acc, -983040, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 1] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = -20359;
                acc = ax_dmac(acc, 3997709, t[0], t[1]);
                acc = ax_dmac(acc, -3342316, t[2], t[3]);
                acc = ax_dmac(acc, 2687009, t[4], t[5]);
                acc = ax_dmac(acc, 4128814, t[6], t[7]);
                acc = ax_dmac(acc, 15, t[8], t[9]);
                acc = ax_dmac(acc, -2686976, t[10], t[11]);
                acc = ax_dmac(acc, 0, t[12], t[13]);
                acc = ax_dmac(acc, 1114081, t[14], t[15]);
                acc = ax_dmac(acc, 3604494, t[16], t[17]);
                acc = ax_dmac(acc, 65502, t[18], t[19]);
                acc = ax_dmac(acc, 3473430, t[20], t[21]);
                acc = ax_dmac(acc, 3735523, t[22], t[23]);
                acc = ax_dmac(acc, 65480, t[24], t[25]);
                acc = ax_dmac(acc, 0, t[26], t[27]);
                acc = ax_dmac(acc, -1638389, t[28], t[29]);
                acc = ax_dmac(acc, 44, t[30], t[31]);
                acc = ax_dmac(acc, 51, t[32], t[33]);
                acc = ax_dmac(acc, 22, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 2] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 6193;
                acc = ax_dmac(acc, 7, t[0], t[1]);
                acc = ax_dmac(acc, 65530, t[2], t[3]);
                acc = ax_dmac(acc, -983024, t[4], t[5]);
                acc = ax_dmac(acc, 1310720, t[6], t[7]);
                acc = ax_dmac(acc, 45, t[8], t[9]);
                acc = ax_dmac(acc, -65484, t[10], t[11]);
                acc = ax_dmac(acc, 39, t[12], t[13]);
                acc = ax_dmac(acc, 458721, t[14], t[15]);
                acc = ax_dmac(acc, -2883643, t[16], t[17]);
                acc = ax_dmac(acc, 3670016, t[18], t[19]);
                acc = ax_dmac(acc, -3670054, t[20], t[21]);
                acc = ax_dmac(acc, 983074, t[22], t[23]);
                acc = ax_dmac(acc, 0, t[24], t[25]);
                acc = ax_dmac(acc, 65536, t[26], t[27]);
                acc = ax_dmac(acc, -65475, t[28], t[29]);
                acc = ax_dmac(acc, -3342366, t[30], t[31]);
                acc = ax_dmac(acc, 0, t[32], t[33]);
                acc = ax_dmac(acc, -983060, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 3] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 13781;
                acc = ax_dmac(acc, -2097109, t[0], t[1]);
                acc = ax_dmac(acc, 2752450, t[2], t[3]);
                acc = ax_dmac(acc, 18, t[4], t[5]);
                acc = ax_dmac(acc, -524288, t[6], t[7]);
                acc = ax_dmac(acc, -2555904, t[8], t[9]);
                acc = ax_dmac(acc, -3145672, t[10], t[11]);
                acc = ax_dmac(acc, 65473, t[12], t[13]);
                acc = ax_dmac(acc, -1048535, t[14], t[15]);
                acc = ax_dmac(acc, 0, t[16], t[17]);
                acc = ax_dmac(acc, 196565, t[18], t[19]);
                acc = ax_dmac(acc, -2949120, t[20], t[21]);
                acc = ax_dmac(acc, 3670019, t[22], t[23]);
                acc = ax_dmac(acc, -2818004, t[24], t[25]);
                acc = ax_dmac(acc, 0, t[26], t[27]);
                acc = ax_dmac(acc, -3735568, t[28], t[29]);
                acc = ax_dmac(acc, 2293701, t[30], t[31]);
                acc = ax_dmac(acc, 2555904, t[32], t[33]);
                acc = ax_dmac(acc, 10, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 4] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = -8788;
                acc = ax_dmac(acc, -1572926, t[0], t[1]);
                acc = ax_dmac(acc, 3735524, t[2], t[3]);
                acc = ax_dmac(acc, 2555914, t[4], t[5]);
                acc = ax_dmac(acc, -720896, t[6], t[7]);
                acc = ax_dmac(acc, 65525, t[8], t[9]);
                acc = ax_dmac(acc, 0, t[10], t[11]);
                acc = ax_dmac(acc, 1245184, t[12], t[13]);
                acc = ax_dmac(acc, 3407895, t[14], t[15]);
                acc = ax_dmac(acc, 1638400, t[16], t[17]);
                acc = ax_dmac(acc, -786372, t[18], t[19]);
                acc = ax_dmac(acc, 2162648, t[20], t[21]);
                acc = ax_dmac(acc, 1900544, t[22], t[23]);
                acc = ax_dmac(acc, 46, t[24], t[25]);
                acc = ax_dmac(acc, 0, t[26], t[27]);
                acc = ax_dmac(acc, 2949114, t[28], t[29]);
                acc = ax_dmac(acc, 65507, t[30], t[31]);
                acc = ax_dmac(acc, -1966089, t[32], t[33]);
                acc = ax_dmac(acc, -1900534, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 5] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
        }
    }
}
