"""Closed-form forcing for the manufactured unit-sphere case.

Generated by scripts/derive_manufactured.py; do not edit.
Valid on the unit sphere only, alpha = 1.
"""
import numpy as np

SOURCE_SHA256 = "2e1d3144bed2af26436e6abcfe2ca446fe8c5f2e06c59ee66ac36586f25d2bf2"


def forcing(x):
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    t0 = x1**5
    t1 = x2**3
    t2 = x1**6
    t3 = x3**2
    t4 = 12*t3
    t5 = x1**2
    t6 = 3*t5
    t7 = x1**3
    t8 = 3*t7
    t9 = x3**7
    t10 = 2*x1
    t11 = x3**8
    t12 = x1**4
    t13 = 6*x3
    t14 = x3**5
    t15 = 6*t14
    t16 = x3**3
    t17 = x3**6
    t18 = x3**4
    t19 = t18*x1
    t20 = x1*x3
    t21 = x2**4
    t22 = t21*t5
    t23 = 768*t17
    t24 = 768*t18
    t25 = t12*t16
    t26 = 548*t21
    t27 = x2**6
    t28 = 540*t0
    t29 = 540*t14
    t30 = x2**8
    t31 = 360*t7
    t32 = 360*t9
    t33 = x1**7
    t34 = 360*t33
    t35 = x1**8
    t36 = 360*t16
    t37 = t12*t3
    t38 = t14*t5
    t39 = t2*x3
    t40 = 274*t27
    t41 = x2**2
    t42 = 274*t41
    t43 = 256*t5
    t44 = t3*t35
    t45 = 160*t2
    t46 = 160*t35
    t47 = x2**10
    t48 = 90*x1
    t49 = x1**10
    t50 = 90*x3
    t51 = x3**9
    t52 = 90*t51
    t53 = x1**9
    t54 = 90*t53
    t55 = x3**10
    t56 = 80*t12
    t57 = 80*t49
    t58 = t41*x1
    t59 = x3**12
    t60 = 16*t5
    t61 = 16*x1**12
    t62 = t18*t41
    t63 = 6*t21
    t64 = t1*t5
    t65 = 3*x1
    t66 = 2*x3
    t67 = t12*t41
    t68 = 2*t3
    t69 = t17*t41
    t70 = 12*t41
    t71 = x2**12
    t72 = 16*x1
    t73 = x3**11
    t74 = 16*x1**11
    t75 = 80*t7
    t76 = 80*t53
    t77 = t5*t55
    t78 = 98*t3
    t79 = t3*t5
    t80 = 160*t0
    t81 = 160*t33
    t82 = t21*x1
    t83 = 199*t41
    t84 = t12*x3
    t85 = t16*t5
    t86 = 214*x1
    t87 = 214*x3
    t88 = 214*t9
    t89 = 214*t33
    t90 = t2*t3
    t91 = t17*t5
    t92 = 392*t11
    t93 = 392*t18
    t94 = 588*t17
    t95 = 642*t7
    t96 = 642*t12
    t97 = 642*t0
    t98 = 642*t16
    t99 = t12*t18
    t100 = t18*t5
    t101 = t5*x3
    t102 = t41*x3
    t103 = t21*t3
    t104 = t3*t41
    t105 = t3*t7
    t106 = 1080*t27
    t107 = 1080*t14
    t108 = 1080*t0
    t109 = t16*t41
    t110 = t41*t5
    t111 = t41*t85
    t112 = 554*t41
    t113 = t3*x1
    t114 = t104*t7
    t115 = 540*t27
    t116 = t21*t39
    t117 = 480*t21
    t118 = t117*t17
    t119 = 480*t2
    t120 = t117*t18
    t121 = 360*t17
    t122 = 360*t30
    t123 = 360*t27
    t124 = t27*t5
    t125 = 320*t67
    t126 = 320*t27
    t127 = 320*t35
    t128 = t22*x3
    t129 = t27*t3
    t130 = 160*t22
    t131 = 160*t27
    t132 = t11*t41
    t133 = t30*t5
    t134 = 80*t30
    t135 = t47*t60
    t136 = t55*t58
    t137 = 80*t11
    t138 = 80*t47
    t139 = 160*t30
    t140 = t21*x3
    t141 = t3*t58
    t142 = t17*t58
    t143 = t17*t7
    t144 = 320*t21
    t145 = 320*t30
    t146 = 320*t33
    t147 = 392*t27
    t148 = t18*t7
    t149 = 480*t27
    t150 = t0*t3
    t151 = t14*t41
    t152 = t16*t2
    t153 = 588*t21
    t154 = 642*t27
    t155 = 642*t41
    t156 = 1176*t17
    t157 = 1284*t7
    t158 = 1080*t21
    t159 = 80*t51
    t160 = 160*t17
    t161 = t14*t21
    t162 = 480*t161
    t163 = 642*t21
    t164 = t0*t120 - t104*t34 + t104*t76 + t104*t97 + t110*t159 - t110*t32 + t12*t162 + t131*t39 - t148*t158 + t155*t38 - t158*t25 + t160*t27*x1 + t163*t19 + t163*t84 + 1
    t165 = x2*x3
    t166 = x2**5
    t167 = x2**7
    t168 = x2**9
    t169 = x2**11
    t170 = t166*x1
    t171 = 18*x2
    t172 = 13*x2
    t173 = t0*x2
    t174 = 4*x2
    t175 = t16*x1
    t176 = t14*x1
    t177 = t17*x1
    t178 = t9*x2
    t179 = 256*x1
    t180 = t51*x2
    t181 = 98*x1
    t182 = t59*t72
    t183 = t1*t20
    t184 = 560*t166
    t185 = 642*t167
    t186 = 360*t168
    t187 = 80*t169
    t188 = t1*t7
    t189 = 286*t1
    t190 = 540*t167
    t191 = 160*t168
    t192 = 214*t1
    t193 = 360*t166
    t194 = 90*t1
    t195 = 80*t166
    t196 = 16*t1
    t197 = t1*t3
    t198 = t166*t18
    t199 = t160*t167
    t200 = 642*t1
    t201 = t1*x1
    t202 = 364*t3
    t203 = 160*t9
    t204 = 160*t11
    t205 = t167*t3
    t206 = 392*t167
    t207 = 80*t168
    t208 = t3*t72
    t209 = t16*t7
    t210 = t14*x2
    t211 = t7*x2
    t212 = t55*t75
    t213 = t166*x3
    t214 = t167*x3
    t215 = t168*t75
    t216 = t1*x3
    t217 = 256*t33
    t218 = t16*x2
    t219 = t17*t81
    t220 = t18*t76
    t221 = t3*t74
    t222 = 1080*t166
    t223 = 320*t166
    t224 = 480*t167
    t225 = 1284*t16
    t226 = 320*t188
    t227 = 768*t7
    t228 = t166*t3
    t229 = 1176*t7
    t230 = t14*t7
    t231 = 480*t166
    t232 = 320*t167
    t233 = 768*t0
    t234 = t0*t16
    t235 = t1*t18
    t236 = 1176*t0
    t237 = 480*t0
    t238 = t1*t237
    t239 = 392*t33
    t240 = 6*t0
    t241 = t0*x3
    t242 = t7*x3
    t243 = t131*t9
    t244 = t51*t7
    t245 = t0*t9
    t246 = t16*t21
    t247 = t16*t27
    t248 = t3*t30
    t249 = t16*t30
    t250 = 80*t35
    return np.stack(np.broadcast_arrays(-t0*t42 + t0 + t1 + t10 - t100*t134 - 619/2*t100 + 209*t101*t41 - 153/2*t101 - 360*t102*t35 + t102*t57 - 15/2*t102 - t103*t108 + t103*t146 + t103*t157 - 15/2*t103 - t104*t57 + (23/2)*t104 - t105*t106 + t105*t145 - t107*t67 + t109*t127 - 1080*t109*t2 - t11*t125 - t11*t130 - t11*t43 - t11*t45 + 2*t11 - t110*t23 + t110*t92 - 560*t111 - t112*t84 - t113*t122 + t113*t138 + t113*t154 - t113*t26 - 548*t114 - t115*t19 - 540*t116 + t117*t152 - t118*t12 + t119*t151 - t119*t69 - t12*t23 - t12*t32 - 1536*t12*t62 + t12*t92 + 3*t12 - t120*t2 - t121*t82 - t123*t84 - t124*t36 + t124*t87 + t124*t93 + t125*t9 + t126*t25 - t126*t99 - t127*t62 - 280*t128 - t129*t43 - t129*t45 + t13*t21 + t13 + t130*t9 + t131*t38 - t131*t91 - t132*t48 + t132*t75 - t133*t50 + t133*t78 - t134*t37 + t134*t84 + t134*t85 - t135*t3 + t135*x3 + 16*t136 + t137*t82 + t139*t19 + t14*t46 + t14*t96 + t140*t46 + 199*t141 + 214*t142 + t143*t144 + t147*t37 + t148*t149 + t149*t150 - t15*t41 + t15 + t153*t90 + t155*t39 + t156*t67 + t16*t57 - t16*t63 + t16*t70 - 15/2*t16 + t164 - t17*t46 - 15/2*t17 - t18*t57 + t18*t63 + (23/2)*t18 - t19*t42 + t19 - t2*t24 - t2*t29 + 1176*t2*t62 + t2*t94 + t2*t98 - t2 - t20 - t21*t34 - 768*t21*t37 - 160*t21*t44 + t21*t76 + t21*t97 + 1176*t21*t99 - t22*t24 - t22*t29 + 370*t22*t3 + t22*t94 + t22*t98 - t22 + 1284*t25*t41 - 554*t25 - t26*t7 - t27*t28 - t27*t66 + t27*t68 + t27*t81 + t27*t95 - t28*t62 - t3*t61 - t3*t65 - t30*t31 + t30*t80 + t30*t86 - t31*t69 - t35*t36 + t35*t87 + t35*t93 + 734*t37*t41 - 303*t37 - 280*t38 - 276*t39 - t4 - t40*x1 + 392*t41*t44 - t41*t54 + t41*t6 + t41*t74 - 80*t41*t77 - 621/2*t41*t79 + t41*t89 - 768*t41*t90 - 256*t44 + t45*t9 - t47*t48 + t47*t75 - t49*t50 + t49*t78 - t5*t52 + 740*t5*t62 + t5*t88 + t51*t56 - t55*t56 - 72*t58 - t59*t60 - t6 + t60*t73 + t61*x3 + t62*t81 + t62*t95 - 15*t62 - 4*t64 - 2*t67 + t68*t7 + t69*t80 + 6*t69 + t7*t83 + t71*t72 + 98*t77 + 130*t79 - t8 + 198*t82 + 203*t84 + 209*t85 - 2*t9 + 366*t90 + 370*t91 + 734*t99, -274*t0*t165 + t1*t12*t160 + t1*t146*t16 - 548*t1*t175 + 728*t1*t19 - 1080*t1*t234 + 80*t1*t44 + t1*t65 - 360*t1*t90 - 540*t1*t99 - 87*t1 - t100*t222 + t100*t224 - 12*t100*x2 + t105*t206 - 591/2*t105*x2 - t107*t188 - t11*t179*x2 - t11*t194 + t11*t195 - t11*t226 + (237/2)*t113*x2 + t12*t172 - t12*t189 - t12*t190 + t12*t191 - t12*t4*x2 - t121*t64 + t137*t64 + t14*t238 - t143*t231 - t146*t235 - t148*t232 + 728*t148*x2 + 588*t150*t166 + t156*t188 + t159*t201 - t165*t54 + 197*t165*t7 + t165*t74 + t165*t89 - t165 - 768*t166*t19 - 274*t166*t20 + 1284*t166*t79 + t166*t96 + 210*t166 + 160*t167*t176 + 214*t167*t20 - t167*t36*x1 + t167*t45 - 1080*t167*t79 - 278*t167 - 90*t168*t20 + t168*t78*x1 + 320*t168*t79 + 214*t168 + 16*t169*t20 - t169*t208 - 90*t169 - t17*t174 + t17*t192 - t17*t193 - t17*t238 + t170*t202 + t170*t203 - t170*t204 - t170*t29 + t170*t94 + t170*t98 - t170 - t171*t3 - t171*t5 + t172*t18 + t173*t202 + t173*t203 - t173*t204 - t173*t24 - t173*t29 + t173*t94 + t173*t98 - t173 - t174*t2 + t175*t207 + 197*t175*x2 + t176*t200 - 274*t176*x2 + 364*t177*x2 - t178*t31 + t178*t86 - t179*t205 - 1536*t18*t188 - t18*t189 - t18*t190 + t18*t191 + 642*t18*t64 - t180*t48 + t180*t75 + t181*t55*x2 - t182*x2 + 197*t183 - t184*t3 - t184*t5 + t185*t3 + t185*t5 - t186*t3 - t186*t5 + t187*t3 + t187*t5 + t188*t225 + 728*t188*t3 - 548*t188*x3 - 2*t188 + t19*t206 - t19*t207 - 589/2*t19*x2 + t192*t2 - t193*t2 - t194*t35 + t195*t35 + t196*t49 + t196*t55 - t197*t233 + t197*t239 - t197*t76 - 591/2*t197*x1 + 223*t197 + t198*t229 - t198*t237 + 642*t198 - t199*x1 + t199 - 69*t20*x2 + t200*t37 - t201*t23 - t201*t32 - 80*t201*t55 + t201*t92 - t205*t80 - t209*t222 + t209*t232 - 548*t209*x2 + t210*t81 + t210*t95 - t211*t23 + t211*t92 - t212*x2 - t213*t28 + t213*t81 + t213*t95 - t214*t31 + t214*t80 - t215*t3 + t215*x3 - t216*t34 + t216*t76 + t216*t97 - t217*t3*x2 - t218*t34 + t218*t76 - t219*x2 - t220*x2 - t221*x2 - t222*t37 + t223*t90 + t223*t91 + t224*t37 + t226*t9 - t227*t228 - t228*t81 + t230*t231 + t231*t234 + t231*t99 + t235*t236 + t235*t45 - 572*t3*t64 + t33*t93*x2 + t53*t78*x2 + 3*t58 + 223*t64 - t65*x2 + t72*t73*x2 + 26*t79*x2 + t8*x2 - 4*t82 + 16*x2**13 + 15*x2, -t0*t162 - t10*t27 - t101*t122 + t101*t138 + t101*t154 + t101*t83 + 16*t102*t49 - 28*t102*t7 - 72*t102 - t103*t28 + t103*t81 + t103*t95 + 209*t105 - t106*t85 - t107*t22 - t108*t62 - t109*t233 + t109*t239 + t109*t250 - t109*t76 - t11*t31 - 360*t11*t58 + t11*t80 + t11*t86 - 548*t111 - t112*t19 - 153/2*t113 - 560*t114 - t115*t84 - 360*t116 - t117*t7*t9 + t118*t7 - t123*t19 + t126*t148 - t126*t230 - 548*t128 - t129*t31 + t129*t80 + t129*t86 + 320*t132*t7 - t134*t176 + t134*t19 + 80*t136 + t138*t16 + t139*t14 + t139*t84 - t14*t233 + t14*t239 - t14*t42 + 740*t14*t58 - t14*t76 - 768*t14*t82 + t14 + t140*t250 + 198*t140 + 209*t141 + 642*t142 + t144*t152 + t145*t85 - t146*t151 + t146*t62 + t147*t176 + t147*t209 - 554*t148 + t149*t25 + t149*t38 - 280*t150 + t151*t236 + t151*t45 + t153*t234 + t155*t25 + t157*t62 + t159*t21 - t16*t217 - t16*t26 - t16*t47*t72 + 98*t16*t53 - 643/2*t16*t58 - t16*t74 + 376*t16*t82 + t16*t83 - 3*t16 + t161*t229 + 642*t161 + t164 - t17*t28 - 540*t17*t82 + t17*t95 + (273/2)*t175 - 615/2*t176 - 276*t177 - t179*t247 - t179*t51 - t18*t34 + t18*t97 + t181*t249 + t181*t73 + t182 - 4*t183 + 203*t19 - t2*t36*t41 - 14*t20*t21 + 4*t20*t27 + 21*t20*t41 - 18*t20 + t203*t67 + t204*t82 + t208*t47 + 752*t209*t41 - 643/2*t209 + 12*t21*t242 - t21*t32 + t212 + t219 + t22*t225 + 320*t22*t9 + t220 + t221 - t227*t246 - t227*t9 + t229*t41*t9 - 1536*t230*t41 + 740*t230 + 376*t234 + t237*t69 - t240*t41 + t240 + t241*t70 - 14*t241 + 21*t242 - t243*x1 + t243 - 320*t244*t41 + 392*t244 - 480*t245*t41 + 588*t245 - t246*t81 - t247*t80 - t248*t48 + t248*t75 - t249*t75 - t27*t29 + t27*t98 - t29*t67 - t3*t54 - 280*t3*t82 + t3*t89 - t3 - t30*t36 + t30*t87 + 4*t33*x3 - 2*t33 - t35*t41*t50 + 214*t39*t41 - t40*x3 - t41*t52 + 16*t41*t73 + t41*t88 - t42*t84 - t47*t50 - t48*t55 + 392*t51*t58 - t51*t80 - 160*t51*t82 - 80*t58*t73 - 768*t58*t9 - 15/2*t58 - t6*x3 - t63*t7 + t63*x1 + t66 - 1080*t69*t7 + t7*t70 - 15/2*t7 + 16*t71*x3 - t72*x3**13 - t73*t75 - t81*t9 + 588*t82*t9 + t84 + 2*t85 + 368*t9*x1 + 7*x1), axis=-1)


def divergence(x):
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    t0 = 6*x1
    t1 = x2**2
    t2 = 6*t1
    t3 = x2**4
    t4 = x3**2
    t5 = x3**3
    t6 = x3**4
    t7 = 2*x1
    t8 = x1**3
    t9 = x1**5
    t10 = x1**2
    t11 = 4*t3
    t12 = 4*t8
    t13 = 2*t1
    t14 = 4*t1
    return -t0*t6 - t0*x3 + 5*t1*t10 - t1*t12*x3 + 4*t1*t4*t8 + 5*t1*t4 + 4*t1*t6*x1 + 5*t1*x1*x3 - t10*t11 - t10*t14*t4 - t11*t4 - t12*t5 - t13*t6 - t13*x1**4 - t14*t5*x1 - t2*t4*x1 - t2 + 2*t3*t4*x1 - t3*t7*x3 + 5*t3 - 6*t4*t8 + 2*t4*t9 + 8*t4*x1 + 5*t5*x1 + 4*t6*t8 - t7*x3**5 + 5*t8*x3 - 2*t9*x3 + 2*x1*x3**6 - 2*x2**6 + 1 + 0.0 * x1
